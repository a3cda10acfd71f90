use crate::algebra_core::fp;
use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

/// Which of the three reduction cases a type falls into, by `sum(a) / m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseLabel {
    Multiplicative,
    Mixed,
    Etale,
}

impl CaseLabel {
    pub fn name(&self) -> &'static str {
        match self {
            CaseLabel::Multiplicative => "multiplicative",
            CaseLabel::Mixed => "mixed",
            CaseLabel::Etale => "etale",
        }
    }
}

/// The inertia type `(m; a1, a2, a3, a4)` at the branch points `0, 1, inf, lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
pub struct TypeVector {
    pub m: u32,
    pub a: [u32; 4],
}

impl TypeVector {
    pub fn new(m: u32, a: [u32; 4]) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidType(format!("modulus m = {m} must exceed 1")));
        }
        if let Some(x) = a.iter().find(|&&x| x == 0 || x >= m) {
            return Err(Error::InvalidType(format!("entry {x} violates 0 < a_i < m = {m}")));
        }
        let s: u32 = a.iter().sum();
        if s % m != 0 {
            return Err(Error::InvalidType(format!("sum of entries {s} is not divisible by m = {m}")));
        }
        let g = a.iter().fold(m, |g, &x| gcd(g, x));
        if g != 1 {
            return Err(Error::InvalidType(format!("gcd(m, a_1..a_4) = {g}, expected 1")));
        }
        Ok(TypeVector { m, a })
    }

    pub fn sum(&self) -> u32 {
        self.a.iter().sum()
    }

    pub fn case(&self) -> CaseLabel {
        match self.sum() / self.m {
            1 => CaseLabel::Multiplicative,
            2 => CaseLabel::Mixed,
            _ => CaseLabel::Etale,
        }
    }

    pub fn require_mixed(&self) -> Result<()> {
        match self.case() {
            CaseLabel::Mixed => Ok(()),
            c => Err(Error::NotMixed { found: c.name() }),
        }
    }

    /// `(m - a_1, ..., m - a_4)`.
    pub fn dual(&self) -> TypeVector {
        TypeVector { m: self.m, a: self.a.map(|x| self.m - x) }
    }

    /// Representatives in `[0, m)` of `j * a_i`; a zero entry means the
    /// branch point is unramified for that character.
    pub fn twist(&self, j: u32) -> [u32; 4] {
        self.a.map(|x| (j as u64 * x as u64 % self.m as u64) as u32)
    }

    /// `a'_i = a_{perm[i]}` (0-based indices).
    pub fn permuted(&self, perm: [usize; 4]) -> TypeVector {
        TypeVector { m: self.m, a: perm.map(|i| self.a[i]) }
    }

    /// All valid types for modulus `m`, in lexicographic order.
    pub fn all(m: u32) -> Vec<TypeVector> {
        let mut out = Vec::new();
        for a1 in 1..m {
            for a2 in 1..m {
                for a3 in 1..m {
                    for a4 in 1..m {
                        if let Ok(t) = TypeVector::new(m, [a1, a2, a3, a4]) {
                            out.push(t);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {},{},{},{})", self.m, self.a[0], self.a[1], self.a[2], self.a[3])
    }
}

/// Prime `p = 1 mod m` together with the fixed choices of roots of unity:
/// `g` the smallest primitive root, `xi = g`, `zeta = g^alpha` of order `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeContext {
    pub p: u32,
    pub m: u32,
    pub alpha: u32,
    pub primitive_root: u32,
    pub xi: u32,
    pub zeta: u32,
}

impl PrimeContext {
    pub fn new(p: u32, m: u32) -> Result<Self> {
        if !fp::is_prime(p) || p == 2 {
            return Err(Error::InvalidPrime(format!("{p} is not an odd prime")));
        }
        if m < 2 {
            return Err(Error::InvalidType(format!("modulus m = {m} must exceed 1")));
        }
        if (p - 1) % m != 0 {
            return Err(Error::InvalidPrime(format!("p = {p} is not 1 mod m = {m}")));
        }
        let g = fp::smallest_primitive_root(p);
        let alpha = (p - 1) / m;
        let zeta = fp::pow(g, alpha as u64, p);
        Ok(PrimeContext { p, m, alpha, primitive_root: g, xi: g, zeta })
    }

    /// Context matching a type, checking the moduli agree.
    pub fn for_type(p: u32, tv: &TypeVector) -> Result<Self> {
        Self::new(p, tv.m)
    }

    /// `zeta_i = zeta^{a_i}`.
    pub fn zetas(&self, tv: &TypeVector) -> [u32; 4] {
        tv.a.map(|x| fp::pow(self.zeta, x as u64, self.p))
    }

    pub fn require_p_gt5(&self) -> Result<()> {
        if self.p <= 5 {
            return Err(Error::InvalidPrime(format!("p = {} must exceed 5", self.p)));
        }
        Ok(())
    }
}

pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a as u32, b as u32) as u64 * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(TypeVector::new(2, [1, 1, 1, 1]).is_ok());
        assert!(matches!(TypeVector::new(4, [2, 2, 2, 2]), Err(Error::InvalidType(_))));
        assert!(matches!(TypeVector::new(3, [1, 1, 1, 1]), Err(Error::InvalidType(_))));
        assert!(matches!(TypeVector::new(3, [0, 1, 1, 1]), Err(Error::InvalidType(_))));
        assert!(PrimeContext::new(7, 4).is_err());
        assert!(PrimeContext::new(9, 2).is_err());
    }

    #[test]
    fn contexts() {
        let c = PrimeContext::new(7, 3).unwrap();
        assert_eq!((c.primitive_root, c.alpha, c.zeta), (3, 2, 2));
        let c = PrimeContext::new(11, 5).unwrap();
        assert_eq!((c.xi, c.zeta), (2, 4));
    }

    #[test]
    fn cases() {
        assert_eq!(TypeVector::new(5, [1, 1, 1, 2]).unwrap().case(), CaseLabel::Multiplicative);
        assert_eq!(TypeVector::new(2, [1, 1, 1, 1]).unwrap().case(), CaseLabel::Mixed);
        assert_eq!(TypeVector::new(5, [4, 4, 4, 3]).unwrap().case(), CaseLabel::Etale);
    }
}
