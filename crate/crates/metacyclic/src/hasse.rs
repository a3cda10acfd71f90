//! The Hasse polynomial `Phi_a(lambda)` of a mixed type and its zero structure.

use crate::algebra_core::{binom_mod_p, fp, ExtField, PolyFp};
use crate::error::{ensure, Result};
use crate::types::{PrimeContext, TypeVector};
use serde::Serialize;

/// `Phi_a = (-1)^{alpha a3} sum_{i+j = alpha a3} C(alpha a2*, i) C(alpha a4*, j) lambda^j`.
pub fn hasse_invariant(ctx: &PrimeContext, tv: &TypeVector) -> Result<PolyFp> {
    tv.require_mixed()?;
    let p = ctx.p;
    let al = ctx.alpha as u64;
    let n3 = al * tv.a[2] as u64;
    let n2 = al * (tv.m - tv.a[1]) as u64;
    let n4 = al * (tv.m - tv.a[3]) as u64;
    let coeffs: Vec<u32> = (0..=n3.min(n4))
        .map(|j| fp::mul(binom_mod_p(n2, n3 - j, p), binom_mod_p(n4, j, p), p))
        .collect();
    let phi = PolyFp::new(p, coeffs);
    Ok(if n3 % 2 == 1 { phi.neg() } else { phi })
}

/// `(A, B, C) = (-alpha a3, alpha (a4 - m), -alpha (a2 + a3))` mod p.
pub fn hgde_params(ctx: &PrimeContext, tv: &TypeVector) -> Result<(u32, u32, u32)> {
    tv.require_mixed()?;
    let (al, m) = (ctx.alpha as i64, tv.m as i64);
    let a = tv.a.map(|x| x as i64);
    let r = |x: i64| fp::from_i64(x, ctx.p);
    Ok((r(-al * a[2]), r(al * (a[3] - m)), r(-al * (a[1] + a[2]))))
}

/// Residual `l(1-l) u'' + (C - (A+B+1) l) u' - AB u` vanishes identically.
pub fn verify_hgde(phi: &PolyFp, (a, b, c): (u32, u32, u32)) -> bool {
    let p = phi.p();
    let d1 = phi.derivative();
    let d2 = d1.derivative();
    let l_one_minus_l = PolyFp::new(p, vec![0, 1, p - 1]);
    let lin = PolyFp::new(p, vec![c, fp::neg(fp::add(fp::add(a, b, p), 1, p), p)]);
    let residual = l_one_minus_l
        .mul(&d2)
        .add(&lin.mul(&d1))
        .sub(&phi.scale(fp::mul(a, b, p)));
    residual.is_zero()
}

/// Predicted orders `max(alpha(a2+a3-m), 0)` at 0 and `max(alpha(a1+a3-m), 0)` at 1,
/// checked against the actual valuations.
pub fn boundary_zero_orders(ctx: &PrimeContext, tv: &TypeVector) -> Result<(u32, u32)> {
    let phi = hasse_invariant(ctx, tv)?;
    let (e0, e1) = ratio_exponents(ctx, tv);
    let (o0, o1) = (e0.max(0) as u32, e1.max(0) as u32);
    ensure!(
        phi.valuation_at(0) == o0 as usize && phi.valuation_at(1) == o1 as usize,
        "boundary orders of {phi} differ from the prediction ({o0}, {o1}) for {tv}"
    );
    Ok((o0, o1))
}

/// Signed `(alpha(a2+a3-m), alpha(a1+a3-m))`.
pub fn ratio_exponents(ctx: &PrimeContext, tv: &TypeVector) -> (i64, i64) {
    let (al, m) = (ctx.alpha as i64, tv.m as i64);
    let a = tv.a.map(|x| x as i64);
    (al * (a[1] + a[2] - m), al * (a[0] + a[2] - m))
}

/// An irreducible factor of the interior part, with its roots in `F_{p^deg}`
/// (each root written in the generator of the canonical extension).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupersingularFactor {
    pub factor: PolyFp,
    pub multiplicity: usize,
    pub degree: usize,
    pub field_modulus: PolyFp,
    pub roots: Vec<PolyFp>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HasseReport {
    pub phi: PolyFp,
    pub phi_dual: PolyFp,
    pub ode_params: (u32, u32, u32),
    pub zero_order_at_0: u32,
    pub zero_order_at_1: u32,
    /// Leading unit of `Phi_a`.
    pub unit: u32,
    pub supersingular_factors: Vec<SupersingularFactor>,
    pub count: usize,
    pub ratio_exponents: (i64, i64),
    pub ratio_unit: u32,
}

/// `Phi_a / (lambda^{o0} (lambda-1)^{o1})`.
pub fn interior_part(ctx: &PrimeContext, tv: &TypeVector) -> Result<PolyFp> {
    let phi = hasse_invariant(ctx, tv)?;
    let (o0, o1) = boundary_zero_orders(ctx, tv)?;
    let p = ctx.p;
    let boundary = PolyFp::monomial(1, o0 as usize, p).mul(&PolyFp::linear(1, p).pow(o1 as u64));
    phi.div_exact(&boundary)
}

pub fn supersingular_set(ctx: &PrimeContext, tv: &TypeVector) -> Result<HasseReport> {
    supersingular_set_with(ctx, tv, true)
}

/// As `supersingular_set`; `with_roots = false` skips root finding in extensions.
pub fn supersingular_set_with(
    ctx: &PrimeContext,
    tv: &TypeVector,
    with_roots: bool,
) -> Result<HasseReport> {
    let phi = hasse_invariant(ctx, tv)?;
    let params = hgde_params(ctx, tv)?;
    let (o0, o1) = boundary_zero_orders(ctx, tv)?;
    let al = ctx.alpha as usize;
    let expected_deg = (al * (tv.m - tv.a[3]) as usize).min(al * tv.a[2] as usize);
    ensure!(phi.degree() == Some(expected_deg), "deg {phi} != {expected_deg} for {tv}");
    let interior = interior_part(ctx, tv)?;
    ensure!(interior.is_squarefree(), "interior zeros of {phi} are not simple for {tv}");
    let fac = interior.factor()?;
    let mut factors = Vec::with_capacity(fac.factors.len());
    for (g, e) in fac.factors {
        ensure!(e == 1, "repeated factor {g} in {phi}");
        let degree = g.deg_or_zero();
        let (field_modulus, roots) = if with_roots {
            let field = ExtField::new(ctx.p, degree)?;
            let roots: Vec<PolyFp> = field.roots(&g)?.into_iter().map(|r| r.value).collect();
            ensure!(roots.len() == degree, "{g} does not split in its degree-{degree} extension");
            (field.modulus().clone(), roots)
        } else {
            (PolyFp::zero(ctx.p), Vec::new())
        };
        factors.push(SupersingularFactor { factor: g, multiplicity: e, degree, field_modulus, roots });
    }
    let count: usize = factors.iter().map(|f| f.degree).sum();
    let formula = expected_deg as i64 - o0 as i64 - o1 as i64;
    ensure!(count as i64 == formula, "supersingular count {count} != closed form {formula}");
    ensure!(count >= 1, "no supersingular values for {tv}");
    let ratio = dual_ratio_check(ctx, tv)?;
    ensure!(ratio.ok, "ratio identity fails for {tv}");
    Ok(HasseReport {
        phi_dual: hasse_invariant(ctx, &tv.dual())?,
        unit: phi.leading(),
        phi,
        ode_params: params,
        zero_order_at_0: o0,
        zero_order_at_1: o1,
        supersingular_factors: factors,
        count,
        ratio_exponents: (ratio.e0, ratio.e1),
        ratio_unit: ratio.unit,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RatioCheck {
    pub e0: i64,
    pub e1: i64,
    /// `Phi_a t^{e0-} (t-1)^{e1-} = unit * Phi_{a*} t^{e0+} (t-1)^{e1+}`.
    pub unit: u32,
    pub ok: bool,
}

/// Checks `Phi_a / Phi_{a*} = unit * t^{e0} (t-1)^{e1}`.
pub fn dual_ratio_check(ctx: &PrimeContext, tv: &TypeVector) -> Result<RatioCheck> {
    let p = ctx.p;
    let phi = hasse_invariant(ctx, tv)?;
    let phi_dual = hasse_invariant(ctx, &tv.dual())?;
    let (e0, e1) = ratio_exponents(ctx, tv);
    let mono = |a: i64, b: i64| {
        PolyFp::monomial(1, a.max(0) as usize, p).mul(&PolyFp::linear(1, p).pow(b.max(0) as u64))
    };
    let lhs = phi.mul(&mono(-e0, -e1));
    let rhs = phi_dual.mul(&mono(e0, e1));
    let unit = fp::mul(lhs.leading(), fp::inv(rhs.leading(), p), p);
    let ok = lhs == rhs.scale(unit);
    ensure!(ok, "Phi_a / Phi_a* is not t^{e0} (t-1)^{e1} up to a unit for {tv}");
    Ok(RatioCheck { e0, e1, unit, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartier::hasse_via_cartier;
    use crate::error::Error;

    fn setup(p: u32, m: u32, a: [u32; 4]) -> (PrimeContext, TypeVector) {
        (PrimeContext::new(p, m).unwrap(), TypeVector::new(m, a).unwrap())
    }

    #[test]
    fn closed_formula() {
        for (p, m, a, want) in [
            (7, 2, [1, 1, 1, 1], vec![6, 5, 5, 6]),
            (7, 3, [1, 1, 2, 2], vec![1, 1, 6]),
            (7, 3, [1, 2, 1, 2], vec![1, 4, 1]),
        ] {
            let (c, t) = setup(p, m, a);
            let phi = hasse_invariant(&c, &t).unwrap();
            assert_eq!(phi, PolyFp::new(p, want));
            assert_eq!(phi, hasse_via_cartier(&c, &t).unwrap());
        }
    }

    #[test]
    fn ode() {
        let (c, t) = setup(7, 2, [1, 1, 1, 1]);
        assert_eq!(hgde_params(&c, &t).unwrap(), (4, 4, 1));
        let (c2, t2) = setup(7, 3, [1, 1, 2, 2]);
        assert_eq!(hgde_params(&c2, &t2).unwrap(), (3, 5, 1));
        let (c3, t3) = setup(7, 3, [1, 2, 1, 2]);
        assert_eq!(hgde_params(&c3, &t3).unwrap(), (5, 5, 1));
        let phi = hasse_invariant(&c, &t).unwrap();
        assert!(verify_hgde(&phi, (4, 4, 1)));
        assert!(verify_hgde(&PolyFp::one(7), (0, 0, 1)));
        assert!(!verify_hgde(&PolyFp::x(7), (4, 4, 1)));
        for (c, t) in [(c2, t2), (c3, t3)] {
            assert!(verify_hgde(&hasse_invariant(&c, &t).unwrap(), hgde_params(&c, &t).unwrap()));
        }
    }

    #[test]
    fn boundary_and_count() {
        let (c, t) = setup(7, 2, [1, 1, 1, 1]);
        assert_eq!(boundary_zero_orders(&c, &t).unwrap(), (0, 0));
        let r = supersingular_set(&c, &t).unwrap();
        assert_eq!(r.count, 3);
        let degs: Vec<usize> = r.supersingular_factors.iter().map(|f| f.degree).collect();
        assert_eq!(degs, vec![1, 1, 1]);
        let (c, t) = setup(7, 3, [1, 2, 1, 2]);
        let r = supersingular_set(&c, &t).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.supersingular_factors[0].factor, PolyFp::new(7, vec![1, 4, 1]));
        assert_eq!(r.supersingular_factors[0].roots.len(), 2);
        let (c, t) = setup(7, 3, [1, 1, 2, 2]);
        assert_eq!(supersingular_set(&c, &t).unwrap().count, 2);
        let (c, t) = setup(11, 5, [4, 4, 4, 3]);
        assert!(matches!(boundary_zero_orders(&c, &t), Err(Error::NotMixed { .. })));
    }

    #[test]
    fn ratios() {
        let (c, t) = setup(7, 3, [1, 2, 1, 2]);
        let r = dual_ratio_check(&c, &t).unwrap();
        assert_eq!((r.e0, r.e1, r.ok), (0, -2, true));
        assert_eq!(hasse_invariant(&c, &t.dual()).unwrap(), PolyFp::new(7, vec![1, 2, 1, 2, 1]));
        let (c, t) = setup(7, 2, [1, 1, 1, 1]);
        let r = dual_ratio_check(&c, &t).unwrap();
        assert_eq!((r.e0, r.e1, r.unit), (0, 0, 1));
        let (c, t) = setup(7, 3, [1, 1, 2, 2]);
        let r = dual_ratio_check(&c, &t).unwrap();
        assert_eq!((r.e0, r.e1), (0, 0));
    }
}
