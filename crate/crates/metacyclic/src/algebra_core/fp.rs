//! Residue arithmetic in F_p. Elements are plain `u32` values in `[0, p)`;
//! the prime travels alongside as an explicit argument.

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(a: u32, mut e: u64, p: u32) -> u32 {
    let mut base = a % p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse via Fermat. Caller guarantees `a != 0`.
pub fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "inverse of zero");
    pow(a, (p - 2) as u64, p)
}

/// Reduce a signed integer into `[0, p)`.
pub fn from_i64(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of a nonzero residue.
pub fn mult_order(a: u32, p: u32) -> u32 {
    let mut ord = p - 1;
    for q in prime_divisors(p - 1) {
        while ord % q == 0 && pow(a, (ord / q) as u64, p) == 1 {
            ord /= q;
        }
    }
    ord
}

pub fn smallest_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| mult_order(g, p) == p - 1)
        .expect("every prime has a primitive root")
}

/// Legendre-style square test for nonzero residues.
pub fn is_square(a: u32, p: u32) -> bool {
    a != 0 && pow(a, ((p - 1) / 2) as u64, p) == 1
}

/// Square root by exhaustive search (p is small everywhere in this crate).
pub fn sqrt(a: u32, p: u32) -> Option<u32> {
    (0..p).find(|&x| mul(x, x, p) == a % p)
}

/// `C(n, r) mod p`: factorial tables below p, Lucas digits above.
pub fn binom_mod_p(n: u64, r: u64, p: u32) -> u32 {
    if r > n {
        return 0;
    }
    let pp = p as u64;
    let mut n = n;
    let mut r = r;
    let mut acc = 1u32;
    while n > 0 || r > 0 {
        let (nd, rd) = ((n % pp) as u32, (r % pp) as u32);
        if rd > nd {
            return 0;
        }
        acc = mul(acc, small_binom(nd, rd, p), p);
        n /= pp;
        r /= pp;
    }
    acc
}

fn small_binom(n: u32, r: u32, p: u32) -> u32 {
    let r = r.min(n - r);
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..r {
        num = mul(num, n - i, p);
        den = mul(den, i + 1, p);
    }
    mul(num, inv(den, p), p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom_mod_p(3, 1, 7), 3);
        assert_eq!(binom_mod_p(3, 5, 7), 0);
        assert_eq!(binom_mod_p(4, 2, 7), 6);
        // Lucas: 10 = 1*7 + 3, so C(10,3) = C(1,0) C(3,3) = 1 = 120 mod 7
        assert_eq!(binom_mod_p(10, 3, 7), 120 % 7);
        assert_eq!(binom_mod_p(49, 7, 7), 0);
        assert_eq!(binom_mod_p(8, 7, 7), 1);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(smallest_primitive_root(7), 3);
        assert_eq!(smallest_primitive_root(11), 2);
        assert_eq!(smallest_primitive_root(13), 2);
        assert_eq!(smallest_primitive_root(31), 3);
        assert_eq!(mult_order(2, 7), 3);
    }
}
