//! Braid matrices, the monodromy group `Gamma <= GL_2(p)` they generate, and
//! conjugacy-class labels in `SL_2(p)`.
//!
//! The matrices act on row vectors: the braid `b_i` sends `w` to `w B_i`.

use crate::algebra_core::mat2::{guard_overridden, sl2_order};
use crate::algebra_core::{fp, group_closure, Mat2};
use crate::error::{ensure, Error, Result};
use crate::nielsen::{nielsen_class, WVector};
use crate::types::{PrimeContext, TypeVector};
use serde::Serialize;
use std::collections::HashSet;

pub fn braid_matrices(ctx: &PrimeContext, tv: &TypeVector) -> Result<[Mat2; 3]> {
    let p = ctx.p;
    let r = |x: i64| fp::from_i64(x, p) as i64;
    let [z1, z2, z3, _] = ctx.zetas(tv).map(|z| z as i64);
    let z12 = r(z1 * z2);
    let z2i = fp::inv(z2 as u32, p) as i64;
    let b1 = Mat2::from_i64([z2, z3 - 1, r(z2 * (z2 - 1)), r(1 - z2 + z2 * z3)], p);
    let b2 = Mat2::from_i64(
        [
            r(z1 * r(1 - z2 + z2 * z3)),
            r(r(z2i * (z3 - 1)) * r(-1 + z1 - z12 + z12 * z3)),
            r(z12 * (1 - z2)),
            r(1 - z1 + z12 + z1 * z3 - z12 * z3),
        ],
        p,
    );
    let b3 = Mat2::from_i64([1, r(z1 * (1 - z3)), 0, z12], p);
    let det_ok = b1.det(p) as i64 == r(z2 * z3)
        && b2.det(p) as i64 == r(z1 * z3)
        && b3.det(p) as i64 == z12;
    ensure!(det_ok, "braid matrix determinants disagree with zeta products for {tv}");
    Ok([b1, b2, b3])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GammaClass {
    ContainsSL2,
    Dihedral,
    SmallExceptional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GaloisGroup {
    SL2,
    PSL2,
    PGL2,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaReport {
    pub generators: [Mat2; 3],
    pub order: u64,
    /// `det(Gamma)` as a sorted list of residues.
    pub det_subgroup: Vec<u32>,
    pub det_subgroup_order: u64,
    pub contains_sl2: bool,
    pub classification: GammaClass,
    pub galois_group: GaloisGroup,
    /// Transitivity of `Gamma` on the Nielsen class (only checked when `SL_2` is contained).
    pub transitive: Option<bool>,
}

/// Subgroup of `F_p^x` generated by `gens`, sorted.
fn cyclic_span(gens: &[u32], p: u32) -> Vec<u32> {
    let mut seen: HashSet<u32> = HashSet::from([1]);
    let mut queue = vec![1];
    while let Some(x) = queue.pop() {
        for &g in gens {
            let y = fp::mul(x, g, p);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    let mut v: Vec<u32> = seen.into_iter().collect();
    v.sort_unstable();
    v
}

/// `(a, a, m/2 - a, m/2 - a)` mod m after some permutation of the branch points.
pub fn is_dihedral_shape(tv: &TypeVector) -> bool {
    let m = tv.m;
    if m % 2 == 1 {
        return false;
    }
    permutations4().iter().any(|&perm| {
        let b = tv.permuted(perm).a;
        let other = (m / 2 + m - b[0] % m) % m;
        b[0] == b[1] && b[2] == other && b[3] == other
    })
}

/// The 24 permutations of `0..4` in lexicographic order.
pub fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let v = [a, b, c, d];
                    let mut s = v;
                    s.sort_unstable();
                    if s == [0, 1, 2, 3] {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

pub fn classify_gamma(ctx: &PrimeContext, tv: &TypeVector) -> Result<GammaReport> {
    ctx.require_p_gt5()?;
    let p = ctx.p;
    let gens = braid_matrices(ctx, tv)?;
    let group = group_closure(&gens, p, guard_overridden())?;
    let order = group.len() as u64;
    let mut dets: Vec<u32> = group.iter().map(|g| g.det(p)).collect();
    dets.sort_unstable();
    dets.dedup();
    let z = ctx.zetas(tv);
    let formula =
        cyclic_span(&[fp::mul(z[0], z[1], p), fp::mul(z[0], z[2], p), fp::mul(z[1], z[2], p)], p);
    ensure!(dets == formula, "det(Gamma) = {dets:?} but the zeta products span {formula:?}");
    let det_order = dets.len() as u64;
    let contains_sl2 = order == sl2_order(p) * det_order;
    let classification = if contains_sl2 {
        GammaClass::ContainsSL2
    } else {
        ensure!(order % p as u64 != 0, "Gamma of order {order} has p-torsion but misses SL_2");
        if is_dihedral_shape(tv) {
            GammaClass::Dihedral
        } else {
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let o = fp::mult_order(fp::mul(z[i], z[j], p), p);
                    ensure!(
                        (2..=5).contains(&o),
                        "exceptional {tv} has zeta_{}zeta_{} of order {o}",
                        i + 1,
                        j + 1
                    );
                }
            }
            GammaClass::SmallExceptional
        }
    };
    let galois_group = if contains_sl2 {
        galois_label(ctx, tv, &dets)
    } else {
        GaloisGroup::NotApplicable
    };
    let transitive = if contains_sl2 { Some(transitive_on_class(ctx, tv, &gens)?) } else { None };
    Ok(GammaReport {
        generators: gens,
        order,
        det_subgroup: dets,
        det_subgroup_order: det_order,
        contains_sl2,
        classification,
        galois_group,
        transitive,
    })
}

fn galois_label(ctx: &PrimeContext, tv: &TypeVector, dets: &[u32]) -> GaloisGroup {
    if tv.m % 2 == 1 {
        return GaloisGroup::SL2;
    }
    let zeta_sq = cyclic_span(&[fp::mul(ctx.zeta, ctx.zeta, ctx.p)], ctx.p);
    if dets.iter().all(|d| zeta_sq.contains(d)) {
        GaloisGroup::PSL2
    } else {
        GaloisGroup::PGL2
    }
}

/// Galois group of the closure; refuses exceptional types.
pub fn galois_group(report: &GammaReport, ctx: &PrimeContext, tv: &TypeVector) -> Result<GaloisGroup> {
    if report.classification != GammaClass::ContainsSL2 {
        return Err(Error::Exceptional(format!("{tv} is exceptional ({:?})", report.classification)));
    }
    Ok(galois_label(ctx, tv, &report.det_subgroup))
}

/// Orbit of one Nielsen class under the generators covers the whole class.
fn transitive_on_class(ctx: &PrimeContext, tv: &TypeVector, gens: &[Mat2; 3]) -> Result<bool> {
    let p = ctx.p;
    let class = nielsen_class(ctx, tv)?;
    let rep = |w: (u32, u32)| {
        let mut x = WVector { v1: w.0, v2: w.1 };
        let mut best = x;
        for _ in 1..ctx.m {
            x = x.scale(ctx.zeta, p);
            best = best.min(x);
        }
        best
    };
    let mut seen = HashSet::from([class[0]]);
    let mut queue = vec![class[0]];
    while let Some(w) = queue.pop() {
        for g in gens {
            let y = rep(g.apply_row((w.v1, w.v2), p));
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    Ok(seen.len() == class.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassKind {
    /// Semisimple class with trace `xi^i + xi^{-i}`.
    C(u32),
    PA,
    PB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassLabel {
    pub kind: ClassKind,
    pub trace: u32,
}

impl ClassLabel {
    pub fn name(&self) -> String {
        match self.kind {
            ClassKind::C(i) => format!("C({i})"),
            ClassKind::PA => "pA".into(),
            ClassKind::PB => "pB".into(),
        }
    }
}

/// `pA` or `pB` for a unipotent `U != I`: conjugate to `[[1, t], [0, 1]]`,
/// `pA` iff `t` is a square.
pub fn unipotent_label(u: &Mat2, p: u32) -> Result<ClassLabel> {
    ensure!(u.trace(p) == 2 % p && u.det(p) == 1 && *u != Mat2::identity(), "{u} is not a nontrivial unipotent");
    let t = if u.b != 0 { u.b } else { fp::neg(u.c, p) };
    let kind = if fp::is_square(t, p) { ClassKind::PA } else { ClassKind::PB };
    Ok(ClassLabel { kind, trace: 2 % p })
}

/// Class vector for `(a, a, m-a, m-a)` with `a < m/2`, `gcd(a, m) = 1`:
/// the two unipotent slots and `B3' = B3 / xi^{a alpha}`.
pub fn class_vector(ctx: &PrimeContext, tv: &TypeVector) -> Result<[ClassLabel; 3]> {
    let (m, a) = (tv.m, tv.a[0]);
    let shape = tv.a == [a, a, m - a, m - a] && 2 * a < m && crate::types::gcd(a, m) == 1;
    if !shape {
        return Err(Error::InvalidType(format!("{tv} is not of the shape (a, a, m-a, m-a), a < m/2")));
    }
    let p = ctx.p;
    let [b1, b2, b3] = braid_matrices(ctx, tv)?;
    let i = a * ctx.alpha;
    let g = fp::pow(ctx.xi, i as u64, p);
    let b3n = b3.scale(fp::inv(g, p), p);
    ensure!(b3n.det(p) == 1, "normalized B3 has determinant {}", b3n.det(p));
    ensure!(b3n.order(p) == m as u64, "normalized B3 has order {} not {m}", b3n.order(p));
    let trace = fp::add(g, fp::inv(g, p), p);
    ensure!(b3n.trace(p) == trace, "trace of normalized B3 is not xi^i + xi^-i");
    Ok([unipotent_label(&b1, p)?, unipotent_label(&b2, p)?, ClassLabel { kind: ClassKind::C(i), trace }])
}

/// Traces of `B_j gamma_j` for the unique scalar `gamma_j in <zeta>` making
/// the determinant 1 and the order exactly `order`.
pub fn normalized_traces(ctx: &PrimeContext, tv: &TypeVector, order: u64) -> Result<[u32; 3]> {
    let p = ctx.p;
    let bs = braid_matrices(ctx, tv)?;
    let mut out = [0; 3];
    for (j, b) in bs.iter().enumerate() {
        let cands: Vec<Mat2> = (0..ctx.m)
            .map(|k| b.scale(fp::pow(ctx.zeta, k as u64, p), p))
            .filter(|c| c.det(p) == 1 && c.order(p) == order)
            .collect();
        ensure!(cands.len() == 1, "B{} admits {} scalar normalizations of order {order}", j + 1, cands.len());
        out[j] = cands[0].trace(p);
    }
    Ok(out)
}

/// Labels `5A` / `5B` use `zeta_5 := zeta^2`, where `zeta` is the fixed
/// character value: 5A has trace `zeta_5 + zeta_5^4`, 5B has `zeta_5^2 + zeta_5^3`.
pub fn five_class_label(ctx: &PrimeContext, trace: u32) -> Option<&'static str> {
    if ctx.m != 5 {
        return None;
    }
    let p = ctx.p;
    let z5 = fp::pow(ctx.zeta, 2, p);
    let t = |k: u64| fp::add(fp::pow(z5, k, p), fp::pow(z5, 5 - k, p), p);
    if trace == t(1) {
        Some("5A")
    } else if trace == t(2) {
        Some("5B")
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nielsen::{braid_act_w, enumerate_estar};

    fn setup(p: u32, m: u32, a: [u32; 4]) -> (PrimeContext, TypeVector) {
        (PrimeContext::new(p, m).unwrap(), TypeVector::new(m, a).unwrap())
    }

    #[test]
    fn matrices_examples() {
        let (c, t) = setup(7, 2, [1, 1, 1, 1]);
        assert_eq!(braid_matrices(&c, &t).unwrap()[2], Mat2::new(1, 5, 0, 1, 7));
        let (c, t) = setup(7, 3, [1, 1, 2, 2]);
        assert_eq!(braid_matrices(&c, &t).unwrap()[2], Mat2::new(1, 1, 0, 4, 7));
    }

    #[test]
    fn row_action_matches_tuples() {
        for (p, m, a) in [(7, 2, [1, 1, 1, 1]), (7, 3, [1, 2, 1, 2]), (11, 5, [1, 1, 4, 4])] {
            let (c, t) = setup(p, m, a);
            let bs = braid_matrices(&c, &t).unwrap();
            for w in enumerate_estar(&c, &t).unwrap() {
                for i in 1..=3 {
                    let img = braid_act_w(&c, &t, i, w).unwrap();
                    assert_eq!(bs[i - 1].apply_row((w.v1, w.v2), p), (img.v1, img.v2));
                }
            }
        }
    }

    #[test]
    fn classification() {
        let (c, t) = setup(7, 2, [1, 1, 1, 1]);
        let r = classify_gamma(&c, &t).unwrap();
        assert!(r.contains_sl2);
        assert_eq!((r.order, r.det_subgroup_order), (336, 1));
        assert_eq!(r.galois_group, GaloisGroup::PSL2);
        assert_eq!(r.transitive, Some(true));
        let (c, t) = setup(13, 4, [1, 1, 1, 1]);
        let r = classify_gamma(&c, &t).unwrap();
        assert_eq!(r.classification, GammaClass::Dihedral);
        assert_ne!(r.order % 13, 0);
        assert!(matches!(galois_group(&r, &c, &t), Err(Error::Exceptional(_))));
        let (c, t) = setup(11, 5, [1, 1, 4, 4]);
        assert_eq!(classify_gamma(&c, &t).unwrap().galois_group, GaloisGroup::SL2);
        let (c, t) = setup(7, 3, [1, 2, 1, 2]);
        assert_eq!(classify_gamma(&c, &t).unwrap().galois_group, GaloisGroup::SL2);
    }

    #[test]
    fn class_vectors() {
        let (c, t) = setup(11, 5, [1, 1, 4, 4]);
        let cv = class_vector(&c, &t).unwrap();
        assert_eq!(cv[2], ClassLabel { kind: ClassKind::C(2), trace: 7 });
        let (c, t) = setup(7, 3, [1, 2, 1, 2]);
        assert!(matches!(class_vector(&c, &t), Err(Error::InvalidType(_))));
    }

    #[test]
    fn five_classes() {
        let c = PrimeContext::new(11, 5).unwrap();
        for i in 1..=4u32 {
            let t = TypeVector::new(5, [i, i, i, (15 - 3 * i) % 5]).unwrap();
            let tr = normalized_traces(&c, &t, 5).unwrap();
            assert!(tr.iter().all(|&x| x == tr[0]));
            let want = if i == 1 || i == 4 { "5B" } else { "5A" };
            assert_eq!(five_class_label(&c, tr[0]), Some(want));
        }
    }
}
