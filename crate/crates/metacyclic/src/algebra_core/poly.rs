//! Dense univariate polynomials over F_p, little-endian coefficients.

use super::fp;
use crate::error::{Error, Result};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyFp {
    p: u32,
    coeffs: Vec<u32>,
}

/// Result of `factor`: `f = unit * prod(g^e)` with every `g` monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub unit: u32,
    pub factors: Vec<(PolyFp, usize)>,
}

impl PolyFp {
    pub fn new(p: u32, mut coeffs: Vec<u32>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut f = PolyFp { p, coeffs };
        f.trim();
        f
    }

    pub fn from_i64(p: u32, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| fp::from_i64(c, p)).collect())
    }

    pub fn zero(p: u32) -> Self {
        PolyFp { p, coeffs: Vec::new() }
    }

    pub fn constant(c: u32, p: u32) -> Self {
        Self::new(p, vec![c])
    }

    pub fn one(p: u32) -> Self {
        Self::constant(1, p)
    }

    pub fn x(p: u32) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn monomial(c: u32, e: usize, p: u32) -> Self {
        let mut v = vec![0; e + 1];
        v[e] = c;
        Self::new(p, v)
    }

    /// `x - r`.
    pub fn linear(r: u32, p: u32) -> Self {
        Self::new(p, vec![fp::neg(r % p, p), 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| fp::add(self.coeff(i), o.coeff(i), p)).collect();
        Self::new(p, v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| fp::sub(self.coeff(i), o.coeff(i), p)).collect();
        Self::new(p, v)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| fp::neg(c, self.p)).collect())
    }

    pub fn scale(&self, c: u32) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| fp::mul(a, c, self.p)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Self::new(self.p, acc.into_iter().map(|c| c as u32).collect())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn mul_xk(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Self::new(self.p, v)
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let p = self.p;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let li = fp::inv(d.leading(), p);
        let mut q = vec![0u32; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = fp::mul(r[i + dd], li, p);
            q[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[i + j] = fp::sub(r[i + j], fp::mul(c, dj, p), p);
            }
        }
        r.truncate(dd);
        Ok((Self::new(p, q), Self::new(p, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact division; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Consistency(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, f: &Self) -> bool {
        matches!(f.rem(self), Ok(r) if r.is_zero())
    }

    /// Split off the leading unit: `self = unit * monic`.
    pub fn monic(&self) -> (u32, Self) {
        if self.is_zero() {
            return (0, self.clone());
        }
        let u = self.leading();
        (u, self.scale(fp::inv(u, self.p)))
    }

    pub fn gcd(&self, o: &Self) -> Result<Self> {
        if self.is_zero() && o.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic().1)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| fp::mul(c, (i as u64 % p as u64) as u32, p))
            .collect();
        Self::new(p, v)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| fp::add(fp::mul(acc, x, p), c, p))
    }

    pub fn powmod(&self, mut e: u64, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(self.p).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Multiplicity of `r` as a root.
    pub fn valuation_at(&self, r: u32) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::linear(r, self.p);
        let mut f = self.clone();
        let mut k = 0;
        loop {
            let (q, rem) = f.divrem(&lin).expect("linear divisor");
            if !rem.is_zero() {
                return k;
            }
            f = q;
            k += 1;
        }
    }

    /// Substitute `x -> x + c`.
    pub fn shift(&self, c: u32) -> Self {
        let p = self.p;
        let lin = Self::new(p, vec![c, 1]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(p), |acc, &a| acc.mul(&lin).add(&Self::constant(a, p)))
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && matches!(self.gcd(&self.derivative()), Ok(g) if g.is_one())
    }

    /// Rabin's test on the monic associate.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let f = self.monic().1;
        let x = Self::x(self.p);
        let frob_iter = |k: usize| -> Self {
            let mut h = x.clone();
            for _ in 0..k {
                h = h.powmod(self.p as u64, &f).expect("nonzero modulus");
            }
            h
        };
        if !frob_iter(n).sub(&x).rem(&f).expect("nonzero").is_zero() {
            return false;
        }
        prime_factors(n).into_iter().all(|q| {
            let h = frob_iter(n / q).sub(&x);
            f.gcd(&h).map(|g| g.is_one()).unwrap_or(false)
        })
    }

    /// Ordering used everywhere a deterministic sequence of polynomials is
    /// needed: by degree, then coefficients from the top down.
    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&o.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(o.coeffs.iter().rev()))
    }

    /// Complete factorization into monic irreducibles with multiplicities.
    pub fn factor(&self) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (unit, f) = self.monic();
        let mut factors = Vec::new();
        for (part, mult) in squarefree_decomposition(&f)? {
            for (block, d) in distinct_degree(&part)? {
                let mut rng = SplitMix(0x6d65_7461_6379_636c ^ (d as u64));
                for g in equal_degree(&block, d, &mut rng)? {
                    factors.push((g, mult));
                }
            }
        }
        factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
        Ok(Factorization { unit, factors })
    }

    /// Pretty form such as `6λ^3 + 5λ^2 + 5λ + 6`.
    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => var.to_string(),
                (1, _) => format!("{c}{var}"),
                (_, 1) => format!("{var}^{i}"),
                _ => format!("{c}{var}^{i}"),
            };
            terms.push(t);
        }
        terms.join(" + ")
    }
}

/// Serialized as the little-endian coefficient list.
impl Serialize for PolyFp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

impl Factorization {
    pub fn expand(&self, p: u32) -> PolyFp {
        self.factors
            .iter()
            .fold(PolyFp::constant(self.unit, p), |acc, (g, e)| acc.mul(&g.pow(*e as u64)))
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
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

/// Fixed-seed generator; keeps equal-degree splitting reproducible.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

/// Monic input; returns coprime squarefree parts with multiplicities.
fn squarefree_decomposition(f: &PolyFp) -> Result<Vec<(PolyFp, usize)>> {
    let p = f.p;
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let mut c = f.gcd(&f.derivative())?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let z = w.div_exact(&y)?;
        if !z.is_constant() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w)?;
    }
    if !c.is_constant() {
        // c' = 0: every exponent is a multiple of p
        let root = PolyFp::new(p, c.coeffs.iter().step_by(p as usize).copied().collect());
        for (g, e) in squarefree_decomposition(&root)? {
            out.push((g, e * p as usize));
        }
    }
    Ok(out)
}

fn distinct_degree(f: &PolyFp) -> Result<Vec<(PolyFp, usize)>> {
    let p = f.p;
    let x = PolyFp::x(p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    while rest.deg_or_zero() >= 2 * d {
        h = h.powmod(p as u64, &rest)?;
        let g = rest.gcd(&h.sub(&x))?;
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if !rest.is_constant() {
        let d = rest.deg_or_zero();
        out.push((rest, d));
    }
    Ok(out)
}

fn equal_degree(f: &PolyFp, d: usize, rng: &mut SplitMix) -> Result<Vec<PolyFp>> {
    let n = f.deg_or_zero();
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let p = f.p;
    loop {
        let a = PolyFp::new(p, (0..n).map(|_| (rng.next() % p as u64) as u32).collect());
        if a.is_constant() {
            continue;
        }
        // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
        let mut s = a.clone();
        let mut norm = a.clone();
        for _ in 1..d {
            s = s.powmod(p as u64, f)?;
            norm = norm.mul(&s).rem(f)?;
        }
        let b = norm.powmod(((p - 1) / 2) as u64, f)?;
        let g = f.gcd(&b.sub(&PolyFp::one(p)))?;
        let dg = g.deg_or_zero();
        if dg > 0 && dg < n {
            let h = f.div_exact(&g)?;
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&h, d, rng)?);
            return Ok(out);
        }
    }
}
