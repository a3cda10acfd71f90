//! 2x2 matrices over F_p and subgroup closure.

use super::fp;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::HashSet;
use std::fmt;

/// Override for the closure size guard.
pub const CLOSURE_OVERRIDE_ENV: &str = "METACYCLIC_ALLOW_LARGE_P";
pub const CLOSURE_P_LIMIT: u32 = 101;

/// Row-major `[[a, b], [c, d]]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl Mat2 {
    pub fn new(a: u32, b: u32, c: u32, d: u32, p: u32) -> Self {
        Mat2 { a: a % p, b: b % p, c: c % p, d: d % p }
    }

    pub fn from_i64(e: [i64; 4], p: u32) -> Self {
        let f = |x| fp::from_i64(x, p);
        Mat2 { a: f(e[0]), b: f(e[1]), c: f(e[2]), d: f(e[3]) }
    }

    pub fn identity() -> Self {
        Mat2 { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn scalar(s: u32) -> Self {
        Mat2 { a: s, b: 0, c: 0, d: s }
    }

    pub fn mul(&self, o: &Mat2, p: u32) -> Mat2 {
        let m = |x: u32, y: u32| fp::mul(x, y, p);
        Mat2 {
            a: fp::add(m(self.a, o.a), m(self.b, o.c), p),
            b: fp::add(m(self.a, o.b), m(self.b, o.d), p),
            c: fp::add(m(self.c, o.a), m(self.d, o.c), p),
            d: fp::add(m(self.c, o.b), m(self.d, o.d), p),
        }
    }

    pub fn scale(&self, s: u32, p: u32) -> Mat2 {
        Mat2::new(
            fp::mul(self.a, s, p),
            fp::mul(self.b, s, p),
            fp::mul(self.c, s, p),
            fp::mul(self.d, s, p),
            p,
        )
    }

    pub fn det(&self, p: u32) -> u32 {
        fp::sub(fp::mul(self.a, self.d, p), fp::mul(self.b, self.c, p), p)
    }

    pub fn trace(&self, p: u32) -> u32 {
        fp::add(self.a, self.d, p)
    }

    pub fn inverse(&self, p: u32) -> Option<Mat2> {
        let det = self.det(p);
        if det == 0 {
            return None;
        }
        let di = fp::inv(det, p);
        Some(Mat2::new(self.d, fp::neg(self.b, p), fp::neg(self.c, p), self.a, p).scale(di, p))
    }

    pub fn pow(&self, mut e: u64, p: u32) -> Mat2 {
        let mut base = *self;
        let mut acc = Mat2::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p);
            }
            base = base.mul(&base, p);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of an invertible matrix.
    pub fn order(&self, p: u32) -> u64 {
        let mut k = 1u64;
        let mut x = *self;
        while x != Mat2::identity() {
            x = x.mul(self, p);
            k += 1;
        }
        k
    }

    /// Row vector times matrix: `(x, y) * M`.
    pub fn apply_row(&self, v: (u32, u32), p: u32) -> (u32, u32) {
        (
            fp::add(fp::mul(v.0, self.a, p), fp::mul(v.1, self.c, p), p),
            fp::add(fp::mul(v.0, self.b, p), fp::mul(v.1, self.d, p), p),
        )
    }

    /// Matrix times column vector.
    pub fn apply_col(&self, v: (u32, u32), p: u32) -> (u32, u32) {
        (
            fp::add(fp::mul(self.a, v.0, p), fp::mul(self.b, v.1, p), p),
            fp::add(fp::mul(self.c, v.0, p), fp::mul(self.d, v.1, p), p),
        )
    }

    pub fn rows(&self) -> [[u32; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Whether the environment lifts the closure size guard.
pub fn guard_overridden() -> bool {
    std::env::var(CLOSURE_OVERRIDE_ENV).map(|v| v == "1").unwrap_or(false)
}

/// Subgroup generated by `gens`, in breadth-first discovery order
/// (starting from the identity, expanding by left multiplication).
pub fn group_closure(gens: &[Mat2], p: u32, allow_large: bool) -> Result<Vec<Mat2>> {
    if p > CLOSURE_P_LIMIT && !allow_large {
        return Err(Error::SizeGuard { p, limit: CLOSURE_P_LIMIT, env: CLOSURE_OVERRIDE_ENV });
    }
    for g in gens {
        if g.det(p) == 0 {
            return Err(Error::SingularGenerator(g.to_string()));
        }
    }
    let key = |m: &Mat2| -> u64 {
        let q = p as u64;
        ((m.a as u64 * q + m.b as u64) * q + m.c as u64) * q + m.d as u64
    };
    let mut seen: HashSet<u64> = HashSet::new();
    let mut order = vec![Mat2::identity()];
    seen.insert(key(&Mat2::identity()));
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for g in gens {
            let y = g.mul(&x, p);
            if seen.insert(key(&y)) {
                order.push(y);
            }
        }
    }
    Ok(order)
}

pub fn sl2_order(p: u32) -> u64 {
    let p = p as u64;
    p * (p * p - 1)
}
