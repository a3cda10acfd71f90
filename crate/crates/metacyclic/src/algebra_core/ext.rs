//! Finite extensions F_{p^k} = F_p[y]/(M(y)) with M the first monic
//! irreducible of degree k in canonical order.

use super::fp;
use super::poly::PolyFp;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    p: u32,
    k: usize,
    modulus: PolyFp,
}

/// Element of an `ExtField`: a polynomial of degree < k in the generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpExt {
    pub value: PolyFp,
}

impl ExtField {
    pub fn new(p: u32, k: usize) -> Result<Self> {
        if !fp::is_prime(p) || p == 2 {
            return Err(Error::InvalidPrime(format!("{p} is not an odd prime")));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("extension degree must be positive".into()));
        }
        Ok(ExtField { p, k, modulus: smallest_irreducible(p, k) })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &PolyFp {
        &self.modulus
    }

    pub fn elem(&self, v: PolyFp) -> FpExt {
        FpExt { value: v.rem(&self.modulus).expect("nonzero modulus") }
    }

    pub fn from_fp(&self, c: u32) -> FpExt {
        self.elem(PolyFp::constant(c, self.p))
    }

    pub fn zero(&self) -> FpExt {
        self.from_fp(0)
    }

    pub fn one(&self) -> FpExt {
        self.from_fp(1)
    }

    /// The class of y.
    pub fn generator(&self) -> FpExt {
        self.elem(PolyFp::x(self.p))
    }

    pub fn add(&self, a: &FpExt, b: &FpExt) -> FpExt {
        FpExt { value: a.value.add(&b.value) }
    }

    pub fn sub(&self, a: &FpExt, b: &FpExt) -> FpExt {
        FpExt { value: a.value.sub(&b.value) }
    }

    pub fn mul(&self, a: &FpExt, b: &FpExt) -> FpExt {
        self.elem(a.value.mul(&b.value))
    }

    pub fn pow(&self, a: &FpExt, e: u64) -> FpExt {
        FpExt { value: a.value.powmod(e, &self.modulus).expect("nonzero modulus") }
    }

    pub fn frobenius(&self, a: &FpExt) -> FpExt {
        self.pow(a, self.p as u64)
    }

    pub fn inv(&self, a: &FpExt) -> Result<FpExt> {
        if a.is_zero() {
            return Err(Error::InvalidArgument("inverse of zero".into()));
        }
        // extended Euclid on (a, M)
        let (mut r0, mut r1) = (self.modulus.clone(), a.value.clone());
        let (mut s0, mut s1) = (PolyFp::zero(self.p), PolyFp::one(self.p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant
        let c = fp::inv(r0.coeff(0), self.p);
        Ok(self.elem(s0.scale(c)))
    }

    /// Evaluate an F_p polynomial at an extension element.
    pub fn eval(&self, f: &PolyFp, x: &FpExt) -> FpExt {
        f.coeffs().iter().rev().fold(self.zero(), |acc, &c| {
            self.add(&self.mul(&acc, x), &self.from_fp(c))
        })
    }

    /// If the element lies in F_p, return it.
    pub fn as_fp(&self, a: &FpExt) -> Option<u32> {
        if a.value.is_constant() {
            Some(a.value.coeff(0))
        } else {
            None
        }
    }

    /// All roots of `f` lying in this field, sorted canonically.
    pub fn roots(&self, f: &PolyFp) -> Result<Vec<FpExt>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let poly = ExtPoly::from_fp(self, f).monic(self)?;
        // keep the part that splits over F_{p^k}: gcd(f, x^{q} - x)
        let x = ExtPoly::x(self);
        let mut h = x.clone();
        for _ in 0..self.k {
            h = h.powmod(self, self.p as u64, &poly)?;
        }
        let split = poly.gcd(self, &h.sub(self, &x))?;
        let mut out = Vec::new();
        let mut seed = 0u64;
        self.split_linear(&split, &mut seed, &mut out)?;
        out.sort_by(|a, b| a.value.canonical_cmp(&b.value));
        out.dedup();
        Ok(out)
    }

    fn split_linear(&self, f: &ExtPoly, seed: &mut u64, out: &mut Vec<FpExt>) -> Result<()> {
        let n = f.degree();
        if n == 0 {
            return Ok(());
        }
        if n == 1 {
            // x + c (monic)
            out.push(self.sub(&self.zero(), &f.c[0]));
            return Ok(());
        }
        loop {
            *seed += 1;
            let delta = self.enumerate(*seed);
            let a = ExtPoly { c: vec![delta, self.one()] };
            // a^((q-1)/2) with (q-1)/2 = (1 + p + ... + p^{k-1}) (p-1)/2
            let mut s = a.rem(self, f)?;
            let mut norm = s.clone();
            for _ in 1..self.k {
                s = s.powmod(self, self.p as u64, f)?;
                norm = norm.mul(self, &s).rem(self, f)?;
            }
            let b = norm.powmod(self, ((self.p - 1) / 2) as u64, f)?;
            let g = f.gcd(self, &b.sub(self, &ExtPoly::one(self)))?;
            let dg = g.degree();
            if dg > 0 && dg < n {
                let h = f.div_exact(self, &g)?;
                self.split_linear(&g, seed, out)?;
                self.split_linear(&h, seed, out)?;
                return Ok(());
            }
        }
    }

    /// Deterministic enumeration of field elements (base-p digits).
    fn enumerate(&self, mut n: u64) -> FpExt {
        let mut v = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            v.push((n % self.p as u64) as u32);
            n /= self.p as u64;
        }
        self.elem(PolyFp::new(self.p, v))
    }
}

impl FpExt {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

fn smallest_irreducible(p: u32, k: usize) -> PolyFp {
    if k == 1 {
        return PolyFp::x(p);
    }
    // canonical order: top coefficients most significant, so the constant
    // term varies fastest
    let mut digits = vec![0u32; k];
    loop {
        let mut c = digits.clone();
        c.push(1);
        let f = PolyFp::new(p, c);
        if f.is_irreducible() {
            return f;
        }
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Polynomials with coefficients in an `ExtField`; only what root finding needs.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ExtPoly {
    c: Vec<FpExt>,
}

impl ExtPoly {
    fn trimmed(mut c: Vec<FpExt>) -> Self {
        while c.last().map(|e| e.is_zero()).unwrap_or(false) {
            c.pop();
        }
        ExtPoly { c }
    }

    fn from_fp(f: &ExtField, g: &PolyFp) -> Self {
        Self::trimmed(g.coeffs().iter().map(|&a| f.from_fp(a)).collect())
    }

    fn one(f: &ExtField) -> Self {
        ExtPoly { c: vec![f.one()] }
    }

    fn x(f: &ExtField) -> Self {
        ExtPoly { c: vec![f.zero(), f.one()] }
    }

    fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn sub(&self, f: &ExtField, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = f.zero();
        Self::trimmed(
            (0..n)
                .map(|i| f.sub(self.c.get(i).unwrap_or(&z), o.c.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    fn mul(&self, f: &ExtField, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ExtPoly { c: vec![] };
        }
        let mut acc = vec![f.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                acc[i + j] = f.add(&acc[i + j], &f.mul(a, b));
            }
        }
        Self::trimmed(acc)
    }

    fn monic(&self, f: &ExtField) -> Result<Self> {
        let lead = self.c.last().ok_or(Error::ZeroPolynomial)?;
        let li = f.inv(lead)?;
        Ok(Self::trimmed(self.c.iter().map(|a| f.mul(a, &li)).collect()))
    }

    fn divrem(&self, f: &ExtField, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dd = d.degree();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((ExtPoly { c: vec![] }, self.clone()));
        }
        let li = f.inv(d.c.last().expect("nonzero"))?;
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(&r[i + dd], &li);
            if !c.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[i + j] = f.sub(&r[i + j], &f.mul(&c, dj));
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::trimmed(q), Self::trimmed(r)))
    }

    fn rem(&self, f: &ExtField, d: &Self) -> Result<Self> {
        Ok(self.divrem(f, d)?.1)
    }

    fn div_exact(&self, f: &ExtField, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(f, d)?;
        if !r.is_zero() {
            return Err(Error::Consistency("inexact division over extension".into()));
        }
        Ok(q)
    }

    fn gcd(&self, f: &ExtField, o: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b)?;
            a = b;
            b = r;
        }
        a.monic(f)
    }

    fn powmod(&self, f: &ExtField, mut e: u64, m: &Self) -> Result<Self> {
        let mut base = self.rem(f, m)?;
        let mut acc = Self::one(f).rem(f, m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base).rem(f, m)?;
            }
        }
        Ok(acc)
    }
}
