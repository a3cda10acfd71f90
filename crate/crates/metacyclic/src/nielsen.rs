//! Nielsen tuples in `N = F_p x| <zeta>` and the pure braid action on them.
//!
//! `[v, u]` stands for `phi^v psi^j` with `u = zeta^j`; the product is
//! `[v1, u1][v2, u2] = [v1 + u1 v2, u1 u2]`.

use crate::algebra_core::fp;
use crate::error::{ensure, Error, Result};
use crate::types::{lcm, PrimeContext, TypeVector};
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MetacyclicElement {
    pub v: u32,
    pub u: u32,
}

impl MetacyclicElement {
    pub fn identity() -> Self {
        MetacyclicElement { v: 0, u: 1 }
    }

    pub fn mul(&self, o: &Self, p: u32) -> Self {
        MetacyclicElement { v: fp::add(self.v, fp::mul(self.u, o.v, p), p), u: fp::mul(self.u, o.u, p) }
    }

    pub fn inv(&self, p: u32) -> Self {
        let ui = fp::inv(self.u, p);
        MetacyclicElement { v: fp::neg(fp::mul(ui, self.v, p), p), u: ui }
    }

    /// `h^{-1} g h`.
    pub fn conj(&self, h: &Self, p: u32) -> Self {
        h.inv(p).mul(self, p).mul(h, p)
    }
}

/// `[g, h] = g^{-1} h^{-1} g h`.
pub fn commutator(g: &MetacyclicElement, h: &MetacyclicElement, p: u32) -> MetacyclicElement {
    g.inv(p).mul(&h.inv(p), p).mul(g, p).mul(h, p)
}

/// Coordinates `(v1, v2)` of a normalized tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WVector {
    pub v1: u32,
    pub v2: u32,
}

impl WVector {
    pub fn is_zero(&self) -> bool {
        self.v1 == 0 && self.v2 == 0
    }

    pub fn scale(&self, s: u32, p: u32) -> Self {
        WVector { v1: fp::mul(self.v1, s, p), v2: fp::mul(self.v2, s, p) }
    }

    fn index(&self, p: u32) -> usize {
        (self.v1 * p + self.v2) as usize
    }

    fn from_index(i: usize, p: u32) -> Self {
        WVector { v1: i as u32 / p, v2: i as u32 % p }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NielsenTuple {
    pub g: [MetacyclicElement; 4],
}

impl NielsenTuple {
    /// `([0, z1], [v1, z2], [v2, z3], [v3, z4])` with `v3 = -(z2 z3)^{-1} v1 - z3^{-1} v2`.
    pub fn from_w(ctx: &PrimeContext, tv: &TypeVector, w: WVector) -> Self {
        let p = ctx.p;
        let z = ctx.zetas(tv);
        let v3 = fp::sub(
            fp::neg(fp::mul(fp::inv(fp::mul(z[1], z[2], p), p), w.v1, p), p),
            fp::mul(fp::inv(z[2], p), w.v2, p),
            p,
        );
        let e = |v, u| MetacyclicElement { v, u };
        NielsenTuple { g: [e(0, z[0]), e(w.v1, z[1]), e(w.v2, z[2]), e(v3, z[3])] }
    }

    pub fn product(&self, p: u32) -> MetacyclicElement {
        self.g.iter().fold(MetacyclicElement::identity(), |acc, x| acc.mul(x, p))
    }

    /// Whether each `g_i` lies in the class prescribed by the type.
    pub fn in_classes(&self, ctx: &PrimeContext, tv: &TypeVector) -> bool {
        let z = ctx.zetas(tv);
        (0..4).all(|i| self.g[i].u == z[i])
    }

    /// Generation of `N`, by closing up the subgroup.
    pub fn generates(&self, ctx: &PrimeContext) -> bool {
        let p = ctx.p;
        let mut seen: HashSet<MetacyclicElement> = HashSet::new();
        let mut queue = vec![MetacyclicElement::identity()];
        seen.insert(queue[0]);
        while let Some(x) = queue.pop() {
            for g in &self.g {
                let y = x.mul(g, p);
                if seen.insert(y) {
                    queue.push(y);
                }
            }
        }
        seen.len() == (p * ctx.m) as usize
    }

    /// Conjugate by the unique `phi`-power making `g_1 = [0, z1]`, then read off `(v1, v2)`.
    pub fn normalize(&self, p: u32) -> Result<WVector> {
        let g1 = self.g[0];
        ensure!(g1.u != 1, "first entry has trivial tame part");
        let t = fp::mul(g1.v, fp::inv(fp::sub(1, g1.u, p), p), p);
        let h = MetacyclicElement { v: t, u: 1 };
        let n = self.g.map(|x| x.conj(&h, p));
        ensure!(n[0].v == 0, "normalization failed");
        Ok(WVector { v1: n[1].v, v2: n[2].v })
    }
}

/// Image of a tuple under the pure braid `b_i`, `i` in `1..=3`.
pub fn braid_act(i: usize, t: &NielsenTuple, p: u32) -> Result<NielsenTuple> {
    let [g1, g2, g3, g4] = t.g;
    let c = |x: &MetacyclicElement, h: &MetacyclicElement| x.conj(h, p);
    let g = match i {
        1 => {
            let k = commutator(&g1, &g4, p);
            [c(&g1, &g4), c(&g2, &k), c(&g3, &k), c(&g4, &g1.mul(&g4, p))]
        }
        2 => {
            let k = commutator(&g2, &g4, p);
            [g1, c(&g2, &g4), c(&g3, &k), c(&g4, &g2.mul(&g4, p))]
        }
        3 => [g1, g2, c(&g3, &g4), c(&g4, &g3.mul(&g4, p))],
        _ => return Err(Error::InvalidArgument(format!("braid index {i} not in 1..=3"))),
    };
    Ok(NielsenTuple { g })
}

/// The braid action transported to W-coordinates.
pub fn braid_act_w(ctx: &PrimeContext, tv: &TypeVector, i: usize, w: WVector) -> Result<WVector> {
    let t = NielsenTuple::from_w(ctx, tv, w);
    braid_act(i, &t, ctx.p)?.normalize(ctx.p)
}

/// All nonzero W-vectors, in lexicographic order, each checked to give a
/// valid generating tuple (and the zero vector checked not to).
pub fn enumerate_estar(ctx: &PrimeContext, tv: &TypeVector) -> Result<Vec<WVector>> {
    let p = ctx.p;
    let mut out = Vec::with_capacity((p * p - 1) as usize);
    for v1 in 0..p {
        for v2 in 0..p {
            let w = WVector { v1, v2 };
            let t = NielsenTuple::from_w(ctx, tv, w);
            ensure!(t.product(p) == MetacyclicElement::identity(), "product of {w:?} is not 1");
            ensure!(t.in_classes(ctx, tv), "tuple of {w:?} leaves its classes");
            ensure!(t.generates(ctx) == !w.is_zero(), "generation test disagrees at {w:?}");
            if !w.is_zero() {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// `d_i = m / gcd(a_i + a4, m)`, or `p` when `a_i + a4 = 0 mod m`.
pub fn signature(ctx: &PrimeContext, tv: &TypeVector) -> [u32; 3] {
    let m = tv.m;
    [0, 1, 2].map(|i| {
        let s = tv.a[i] + tv.a[3];
        if s % m == 0 {
            ctx.p
        } else {
            m / crate::types::gcd(s, m)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspReport {
    /// `(p^2 - 1) / m`.
    pub nielsen_class_size: usize,
    /// Sorted orbit lengths of `<b_i>` on the Nielsen class, `i = 1, 2, 3`.
    pub orbit_sizes: [Vec<usize>; 3],
    /// Lcm of the orbit lengths, i.e. the ramification index of the closure.
    pub observed: [u64; 3],
    pub max_orbit: [usize; 3],
    pub signature: [u32; 3],
    pub braid_convention: &'static str,
}

/// Canonical representative of the `<zeta>`-orbit (scalar conjugation by psi).
fn class_rep(w: WVector, ctx: &PrimeContext) -> WVector {
    let mut best = w;
    let mut x = w;
    for _ in 1..ctx.m {
        x = x.scale(ctx.zeta, ctx.p);
        best = best.min(x);
    }
    best
}

/// Nielsen class `(W \ 0) / <zeta>` as sorted representatives.
pub fn nielsen_class(ctx: &PrimeContext, tv: &TypeVector) -> Result<Vec<WVector>> {
    let estar = enumerate_estar(ctx, tv)?;
    let mut reps: Vec<WVector> = estar.iter().map(|&w| class_rep(w, ctx)).collect();
    reps.sort();
    reps.dedup();
    ensure!(
        reps.len() * ctx.m as usize == estar.len(),
        "psi-conjugation does not act freely for {tv}"
    );
    Ok(reps)
}

/// Orbits of each `<b_i>` on the Nielsen class, with the closed-form signature.
pub fn cusps_and_signature(ctx: &PrimeContext, tv: &TypeVector) -> Result<CuspReport> {
    let p = ctx.p;
    let class = nielsen_class(ctx, tv)?;
    let mut orbit_sizes: [Vec<usize>; 3] = Default::default();
    for (slot, i) in (1..=3).enumerate() {
        // braid permutation on all of W \ 0, then pushed to classes
        let mut image = vec![usize::MAX; (p * p) as usize];
        for idx in 1..(p * p) as usize {
            let w = WVector::from_index(idx, p);
            image[idx] = braid_act_w(ctx, tv, i, w)?.index(p);
        }
        let mut seen = HashSet::new();
        let mut sizes = Vec::new();
        for &rep in &class {
            if seen.contains(&rep) {
                continue;
            }
            let mut len = 0;
            let mut x = rep;
            loop {
                seen.insert(x);
                len += 1;
                x = class_rep(WVector::from_index(image[x.index(p)], p), ctx);
                if x == rep {
                    break;
                }
                ensure!(!seen.contains(&x), "braid b{i} is not a bijection on the Nielsen class");
            }
            sizes.push(len);
        }
        sizes.sort_unstable();
        ensure!(sizes.iter().sum::<usize>() == class.len(), "orbits of b{i} do not partition");
        orbit_sizes[slot] = sizes;
    }
    let observed = orbit_sizes.clone().map(|s| s.iter().fold(1u64, |a, &x| lcm(a, x as u64)));
    let max_orbit = orbit_sizes.clone().map(|s| s.last().copied().unwrap_or(0));
    Ok(CuspReport {
        nielsen_class_size: class.len(),
        orbit_sizes,
        observed,
        max_orbit,
        signature: signature(ctx, tv),
        braid_convention: "g Q_i = (.., g_{i+1}, g_{i+1}^{-1} g_i g_{i+1}, ..); b1 = Q3 Q2 Q1^2 Q2^-1 Q3^-1, b2 = Q3 Q2^2 Q3^-1, b3 = Q3^2",
    })
}
