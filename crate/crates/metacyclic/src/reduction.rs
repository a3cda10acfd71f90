//! Good/bad reduction and, in the bad (mixed) case, the deformation datum:
//! the tame cyclic cover `theta^n = g(x)` of the original component, its
//! tails with their ramification invariants, and the Cartier-fixed
//! differential `u theta dx / (x (x-1))`.

use crate::algebra_core::{fp, PolyFp};
use crate::error::{ensure, Error, Result};
use crate::hasse::{boundary_zero_orders, dual_ratio_check, hasse_invariant, interior_part};
use crate::monodromy::{classify_gamma, permutations4, GaloisGroup, GammaClass};
use crate::nielsen::signature;
use crate::types::{gcd, gcd_i64, CaseLabel, PrimeContext, TypeVector};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionCase {
    pub label: CaseLabel,
    pub good_reduction: bool,
}

/// Good reduction exactly when `sum a_i != 2m`.
pub fn reduction_case(tv: &TypeVector) -> ReductionCase {
    let label = tv.case();
    ReductionCase { label, good_reduction: label != CaseLabel::Mixed }
}

/// `gcd(m, a1 + a3, a2 + a3)`.
pub fn d_invariant(tv: &TypeVector) -> u32 {
    gcd(gcd(tv.m, tv.a[0] + tv.a[2]), tv.a[1] + tv.a[2])
}

/// First permutation (lexicographic) with `d != m`; identity when already so or `m = 2`.
pub fn choose_permutation(tv: &TypeVector) -> Result<[usize; 4]> {
    if tv.m == 2 || d_invariant(tv) != tv.m {
        return Ok([0, 1, 2, 3]);
    }
    permutations4()
        .into_iter()
        .find(|&perm| d_invariant(&tv.permuted(perm)) != tv.m)
        .ok_or(Error::DEqualsM)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DatumCase {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "d")]
    D,
}

/// `x^{b1} (x-1)^{b2} Lambda^c` with `Lambda` monic and squarefree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub b1: u32,
    pub b2: u32,
    pub lambda_factor: PolyFp,
    pub c: u32,
}

impl NormalForm {
    pub fn expand(&self, unit: u32) -> PolyFp {
        let p = self.lambda_factor.p();
        PolyFp::monomial(unit, self.b1 as usize, p)
            .mul(&PolyFp::linear(1, p).pow(self.b2 as u64))
            .mul(&self.lambda_factor.pow(self.c as u64))
    }

    fn reduce(&self, n: u32) -> NormalForm {
        NormalForm { b1: self.b1 % n, b2: self.b2 % n, lambda_factor: self.lambda_factor.clone(), c: self.c % n }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TailKind {
    #[serde(rename = "primitive")]
    Primitive,
    #[serde(rename = "new")]
    New,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tail {
    pub kind: TailKind,
    /// `"0"`, `"1"`, `"inf"` for primitive tails, the irreducible factor for new ones.
    pub location: String,
    /// Index (1-based) of the branch point in the type as given, for primitive tails.
    pub branch_index: Option<usize>,
    /// Number of conjugate points represented by this record.
    pub multiplicity: usize,
    pub beta: u32,
    pub n_b: u32,
    pub h_b: u32,
    /// `sigma = h_b / n_b`, reduced.
    pub sigma: (u32, u32),
    pub nu: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaCheck {
    /// `S = c0 g^k` where `S` is the Cartier extraction of `g^{k(p-1)} (x-1)^{p-1}`.
    pub c0: u32,
    /// Fixed units satisfy `u^{p-1} = c0`; they live in `F_{p^e}` with `e = ord(c0)`.
    pub unit_field_degree: u32,
    /// A unit `u in F_p^x` fixing `u theta dx / (x(x-1))` for the equation as recorded.
    pub unit: Option<u32>,
    /// `s in F_p^x` such that rescaling the equation to `theta^{n'} = s g` makes `u = 1`
    /// (exists iff `c0` is a `(p-1)/n'`-th power).
    pub rescale: Option<u32>,
    pub cartier_identity: bool,
    /// Divisor of `theta dx / (x(x-1))` on `theta^{n'} = g`: orders at
    /// points above `0`, `1`, `inf` and each factor of `Lambda`.
    pub orders: Vec<(String, i64)>,
    pub poles_simple_and_wild: bool,
    pub zeros_at_supersingular: bool,
    pub zeros_only_over_lambda: bool,
    /// `ord(omega) = h_b - 1` at every tail, `0` at the remaining tame points.
    pub orders_match_tails: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationDatum {
    pub input: TypeVector,
    pub permutation: [usize; 4],
    /// The type actually used, `a'_i = a_{perm[i]}`.
    pub permuted: TypeVector,
    /// Set when the permutation moves the fourth (moving) branch point.
    pub moved_index4: bool,
    pub d: u32,
    pub case_label: DatumCase,
    pub galois_group: GaloisGroup,
    pub n: u32,
    pub n_prime: u32,
    /// `theta^n = Phi_a^{e1} Phi_a*^{e2}` (square root taken when `halved`).
    pub exponents: (i64, i64),
    /// Exponents as stated for the case; differ from `exponents` only in case d.
    pub stated_exponents: (i64, i64),
    pub halved: bool,
    /// Exponents of `t`, `t - 1` and `Lambda` in `Phi_a^{e1} Phi_a*^{e2}` before reduction.
    pub raw_exponents: (i64, i64, i64),
    pub normal_form: NormalForm,
    /// Scalar in front of the normal form.
    pub unit: u32,
    /// When halved: whether the unit of `Phi_a^{e1} Phi_a*^{e2}` is a square in `F_p`.
    pub unit_is_square: Option<bool>,
    /// `unit * x^{b1} (x-1)^{b2} Lambda^c` when defined over F_p.
    pub theta_rhs: Option<PolyFp>,
    /// Equation of the degree-`n'` quotient.
    pub reduced_form: NormalForm,
    pub tails: Vec<Tail>,
    pub omega: OmegaCheck,
    pub vanishing_cycle_ok: bool,
}

fn unit_pow(u: u32, e: i64, p: u32) -> u32 {
    let base = if e < 0 { fp::inv(u, p) } else { u };
    fp::pow(base, e.unsigned_abs(), p)
}

/// Exponent of `x` (or `x - 1`) in case (c), from the branch data `s = a_i + a4`.
fn case_c_exponent(alpha: i64, m: i64, d: i64, s: i64) -> i64 {
    match s.cmp(&m) {
        std::cmp::Ordering::Greater => alpha * (s - m) * (1 - m / d),
        std::cmp::Ordering::Less => alpha * (m - s) * (1 + m / d),
        std::cmp::Ordering::Equal => 0,
    }
}

pub fn deformation_datum(ctx: &PrimeContext, input: &TypeVector) -> Result<DeformationDatum> {
    input.require_mixed()?;
    ctx.require_p_gt5()?;
    let p = ctx.p;
    let permutation = choose_permutation(input)?;
    let tv = input.permuted(permutation);
    let moved_index4 = permutation[3] != 3;
    let m = tv.m as i64;
    let d = d_invariant(&tv);
    let gamma = classify_gamma(ctx, &tv)?;
    if gamma.classification != GammaClass::ContainsSL2 {
        return Err(Error::Exceptional(format!("{tv} is exceptional ({:?})", gamma.classification)));
    }
    let g = gamma.galois_group;
    let q = m / d as i64;
    let (case_label, stated_exponents) = if tv.m == 2 {
        ensure!(g == GaloisGroup::PSL2, "m = 2 but G = {g:?}");
        (DatumCase::A, (1, 0))
    } else {
        match g {
            GaloisGroup::SL2 => {
                ensure!(q % 2 == 1, "G = SL2 but m/d = {q} is even");
                let j = (q - 1) / 2;
                (DatumCase::B, (1 + j, -j))
            }
            GaloisGroup::PSL2 | GaloisGroup::PGL2 if d % 2 == 0 => (DatumCase::C, (1 + q, 1 - q)),
            GaloisGroup::PGL2 => {
                let j = q / 2;
                (DatumCase::D, (1 + j, 1 - j))
            }
            _ => return Err(Error::Consistency(format!("G = {g:?} with odd d = {d} for {tv}"))),
        }
    };
    // In case d the stated exponents differ from Phi_a Phi_a* by (Phi_a/Phi_a*)^j,
    // a quadratic twist that breaks the Cartier condition; use Phi_a Phi_a*.
    let exponents = if case_label == DatumCase::D { (1, 1) } else { stated_exponents };

    // Phi_a = u_a t^{o0} (t-1)^{o1} Lambda, Phi_a* likewise with the same Lambda.
    let phi = hasse_invariant(ctx, &tv)?;
    let phi_dual = hasse_invariant(ctx, &tv.dual())?;
    let ratio = dual_ratio_check(ctx, &tv)?;
    let (o0, o1) = boundary_zero_orders(ctx, &tv)?;
    let (o0d, o1d) = boundary_zero_orders(ctx, &tv.dual())?;
    let (ua, lambda) = interior_part(ctx, &tv)?.monic();
    let (ud, lambda_d) = interior_part(ctx, &tv.dual())?.monic();
    ensure!(lambda == lambda_d, "interior parts of Phi_a and Phi_a* differ for {tv}");
    let (e1, e2) = exponents;
    let raw = (
        e1 * o0 as i64 + e2 * o0d as i64,
        e1 * o1 as i64 + e2 * o1d as i64,
        e1 + e2,
    );
    let raw_unit = fp::mul(unit_pow(ua, e1, p), unit_pow(ud, e2, p), p);
    verify_product(&phi, &phi_dual, exponents, raw, raw_unit, &lambda)?;
    let _ = ratio;

    // A square right-hand side (cases c, and d when both t-exponents are even)
    // defines a cover of half the degree: take the square root.
    let halved = raw.2 == 2 && raw.0 % 2 == 0 && raw.1 % 2 == 0;
    if case_label == DatumCase::C {
        let al = ctx.alpha as i64;
        let d64 = d as i64;
        let want0 = case_c_exponent(al, m, d64, (tv.a[0] + tv.a[3]) as i64);
        let want1 = case_c_exponent(al, m, d64, (tv.a[1] + tv.a[3]) as i64);
        ensure!((raw.0, raw.1) == (want0, want1), "case c exponents {raw:?} != ({want0}, {want1})");
        ensure!(halved, "case c product is not a square: {raw:?}");
    }
    let (t0, t1, c, unit, unit_is_square, n) = if halved {
        let sq = square_root_check(&lambda, raw.2)?;
        ensure!(sq == lambda, "square root of Lambda^2 is not Lambda");
        let root = fp::sqrt(raw_unit, p);
        (raw.0 / 2, raw.1 / 2, 1, root.unwrap_or(raw_unit), Some(root.is_some()), (p - 1) / 2)
    } else if case_label == DatumCase::A {
        (raw.0, raw.1, raw.2, raw_unit, None, (p - 1) / 2)
    } else {
        (raw.0, raw.1, raw.2, raw_unit, None, p - 1)
    };
    let n64 = n as i64;
    let normal_form = NormalForm {
        b1: t0.rem_euclid(n64) as u32,
        b2: t1.rem_euclid(n64) as u32,
        lambda_factor: lambda.clone(),
        c: c as u32,
    };
    let nf_gcd = gcd(gcd(gcd(normal_form.b1, normal_form.b2), normal_form.c), n);
    ensure!(nf_gcd == 1, "exponent vector of {normal_form:?} is not primitive mod {n}");

    let n_prime = if g == GaloisGroup::SL2 { n / 2 } else { n };
    let reduced_form = normal_form.reduce(n_prime);
    let tails = tail_invariants(ctx, &tv, permutation, &reduced_form, n_prime)?;
    let theta_rhs = if unit_is_square == Some(false) { None } else { Some(normal_form.expand(unit)) };
    let omega_poly = reduced_form.expand(if unit_is_square == Some(false) { 1 } else { unit });
    let omega = verify_omega_fixed(ctx, &tv, &omega_poly, &reduced_form, n_prime, &tails)?;
    let vanishing_cycle_ok = vanishing_cycle_check(&tails, n_prime);
    ensure!(vanishing_cycle_ok, "vanishing cycle identities fail for {tv}");
    Ok(DeformationDatum {
        input: *input,
        permutation,
        permuted: tv,
        moved_index4,
        d,
        case_label,
        galois_group: g,
        n,
        n_prime,
        exponents,
        stated_exponents,
        halved,
        raw_exponents: raw,
        normal_form,
        unit,
        unit_is_square,
        theta_rhs,
        reduced_form,
        tails,
        omega,
        vanishing_cycle_ok,
    })
}

/// Checks `Phi_a^{e1} Phi_a*^{e2} = unit t^{E0} (t-1)^{E1} Lambda^{E2}` by cross-multiplying.
fn verify_product(
    phi: &PolyFp,
    phi_dual: &PolyFp,
    (e1, e2): (i64, i64),
    (t0, t1, c): (i64, i64, i64),
    unit: u32,
    lambda: &PolyFp,
) -> Result<()> {
    let p = phi.p();
    let one = PolyFp::one(p);
    let pw = |f: &PolyFp, e: i64| if e > 0 { f.pow(e as u64) } else { one.clone() };
    let x = PolyFp::x(p);
    let x1 = PolyFp::linear(1, p);
    let lhs = pw(phi, e1).mul(&pw(phi_dual, e2)).mul(&pw(&x, -t0)).mul(&pw(&x1, -t1)).mul(&pw(lambda, -c));
    let rhs = pw(phi, -e1)
        .mul(&pw(phi_dual, -e2))
        .mul(&pw(&x, t0))
        .mul(&pw(&x1, t1))
        .mul(&pw(lambda, c))
        .scale(unit);
    ensure!(lhs == rhs, "Phi_a^{e1} Phi_a*^{e2} does not have the claimed normal form");
    Ok(())
}

/// Square root of `lambda^e` (e even) by factoring: every multiplicity must be even.
fn square_root_check(lambda: &PolyFp, e: i64) -> Result<PolyFp> {
    let f = lambda.pow(e as u64);
    let fac = f.factor()?;
    let mut root = PolyFp::one(f.p());
    for (g, k) in &fac.factors {
        ensure!(k % 2 == 0, "factor {g} has odd multiplicity {k}");
        root = root.mul(&g.pow((k / 2) as u64));
    }
    Ok(root)
}

fn reduced_fraction(a: u32, b: u32) -> (u32, u32) {
    let g = gcd(a, b).max(1);
    (a / g, b / g)
}

/// Primitive tails at the tame branch points among `0, 1, inf` and one
/// record per irreducible factor of `Lambda`, from the degree-`n'` equation.
pub fn tail_invariants(
    ctx: &PrimeContext,
    tv: &TypeVector,
    permutation: [usize; 4],
    form: &NormalForm,
    n_prime: u32,
) -> Result<Vec<Tail>> {
    let np = n_prime as i64;
    let deg_lambda = form.lambda_factor.deg_or_zero() as i64;
    let beta_inf = (-(form.b1 as i64 + form.b2 as i64 + form.c as i64 * deg_lambda)).rem_euclid(np);
    let betas = [form.b1 as i64 % np, form.b2 as i64 % np, beta_inf];
    let sig = signature(ctx, tv);
    let mut tails = Vec::new();
    for (i, (&beta, name)) in betas.iter().zip(["0", "1", "inf"]).enumerate() {
        let tame = sig[i] != ctx.p;
        ensure!(tame == (beta != 0), "branch point {name}: d = {} but beta = {beta}", sig[i]);
        if tame {
            tails.push(make_tail(TailKind::Primitive, name.into(), Some(permutation[i] + 1), 1, beta as u32, n_prime)?);
        }
    }
    let c = (form.c as i64 % np) as u32;
    if !form.lambda_factor.is_constant() {
        for (g, _) in form.lambda_factor.factor()?.factors {
            let deg = g.deg_or_zero();
            tails.push(make_tail(TailKind::New, g.display_var("x"), None, deg, c, n_prime)?);
        }
    }
    for t in &tails {
        if t.kind == TailKind::New {
            let want = reduced_fraction(ctx.p + 1, ctx.p - 1);
            ensure!(t.sigma == want, "new tail sigma {:?} != (p+1)/(p-1)", t.sigma);
        }
    }
    Ok(tails)
}

/// Solve `h (n'/n_b) = beta mod n'` in `(0, n_b)` (primitive) or `(n_b, 2 n_b)` (new).
fn make_tail(kind: TailKind, location: String, branch_index: Option<usize>, multiplicity: usize, beta: u32, np: u32) -> Result<Tail> {
    let n_b = np / gcd(beta, np);
    let range = match kind {
        TailKind::Primitive => 1..n_b,
        TailKind::New => (n_b + 1)..(2 * n_b),
    };
    let sols: Vec<u32> = range.filter(|h| (h * (np / n_b)) % np == beta % np).collect();
    ensure!(sols.len() == 1, "{} solutions for h at {location} (beta {beta}, n' {np})", sols.len());
    let h_b = sols[0];
    Ok(Tail {
        kind,
        location,
        branch_index,
        multiplicity,
        beta,
        n_b,
        h_b,
        sigma: reduced_fraction(h_b, n_b),
        nu: h_b / n_b,
    })
}

/// `sum n' frac(sigma) = n'`, `nu = 1` on new tails and `0` on primitive ones.
pub fn vanishing_cycle_check(tails: &[Tail], n_prime: u32) -> bool {
    let mut total = 0u64;
    for t in tails {
        let nu_ok = match t.kind {
            TailKind::New => t.nu == 1,
            TailKind::Primitive => t.nu == 0,
        };
        if !nu_ok || t.sigma.1 == 0 {
            return false;
        }
        // n' * frac(h/n_b), exact since n_b | n'
        let frac = (t.h_b % t.n_b) as u64 * (n_prime / t.n_b) as u64;
        total += frac * t.multiplicity as u64;
    }
    total == n_prime as u64
}

/// Cartier condition for `u theta dx/(x(x-1))` on `theta^{n'} = g`, plus the divisor.
pub fn verify_omega_fixed(
    ctx: &PrimeContext,
    tv: &TypeVector,
    g: &PolyFp,
    form: &NormalForm,
    n_prime: u32,
    tails: &[Tail],
) -> Result<OmegaCheck> {
    let p = ctx.p;
    let k = ((p - 1) / n_prime) as u64;
    let h = g.pow(k * (p - 1) as u64).mul(&PolyFp::linear(1, p).pow((p - 1) as u64));
    let s = PolyFp::new(p, h.coeffs().iter().step_by(p as usize).copied().collect());
    let gk = g.pow(k);
    let c0 = fp::mul(s.leading(), fp::inv(gk.leading(), p), p);
    let cartier_identity = s == gk.scale(c0);
    ensure!(cartier_identity, "Cartier extraction is not a multiple of g^k for {tv}");
    // u^{p-1} = c0 has a solution in F_p^x iff c0 = 1, and then every u works.
    let unit = (c0 == 1).then_some(1);
    let unit_field_degree = fp::mult_order(c0, p);
    // (s g)^k picks up s^k while S is unchanged.
    let rescale = (1..p).find(|&s| fp::pow(s, k, p) == c0);

    let n = n_prime as i64;
    let ord_fin = |e: i64| {
        let nx = n / gcd_i64(e, n);
        e * nx / n - 1
    };
    let mut orders = vec![("0".to_string(), ord_fin(form.b1 as i64)), ("1".to_string(), ord_fin(form.b2 as i64))];
    let deg_g = form.b1 as i64 + form.b2 as i64 + form.c as i64 * form.lambda_factor.deg_or_zero() as i64;
    let n_inf = n / gcd_i64(deg_g, n);
    orders.push(("inf".to_string(), -deg_g * n_inf / n + n_inf - 1));
    let lam_ord = {
        let c = form.c as i64 % n;
        let nl = n / gcd_i64(c, n);
        c * nl / n + nl - 1
    };
    if !form.lambda_factor.is_constant() {
        for (f, _) in form.lambda_factor.factor()?.factors {
            orders.push((f.display_var("x"), lam_ord));
        }
    }
    let sig = signature(ctx, tv);
    let wild = |i: usize| sig[i] == p;
    let poles_simple_and_wild = orders
        .iter()
        .enumerate()
        .all(|(i, (_, o))| if i < 3 && wild(i) { *o == -1 } else { *o >= 0 });
    let zeros_at_supersingular = orders.iter().skip(3).all(|(_, o)| *o > 0);
    let zeros_only_over_lambda = orders.iter().take(3).all(|(_, o)| *o <= 0);
    let orders_match_tails = orders.iter().enumerate().all(|(i, (name, o))| {
        match tails.iter().find(|t| &t.location == name) {
            Some(t) => *o == t.h_b as i64 - 1,
            None => i < 3 && (wild(i) || *o == 0),
        }
    });
    ensure!(poles_simple_and_wild, "omega has unexpected poles for {tv}: {orders:?}");
    ensure!(zeros_at_supersingular, "omega misses a zero over Lambda for {tv}: {orders:?}");
    ensure!(orders_match_tails, "order of omega differs from h_b - 1 for {tv}: {orders:?}");
    Ok(OmegaCheck {
        c0,
        unit_field_degree,
        unit,
        rescale,
        cartier_identity,
        orders,
        poles_simple_and_wild,
        zeros_at_supersingular,
        zeros_only_over_lambda,
        orders_match_tails,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u32, m: u32, a: [u32; 4]) -> (PrimeContext, TypeVector) {
        (PrimeContext::new(p, m).unwrap(), TypeVector::new(m, a).unwrap())
    }

    #[test]
    fn cases() {
        let t = TypeVector::new(2, [1, 1, 1, 1]).unwrap();
        assert_eq!(reduction_case(&t), ReductionCase { label: CaseLabel::Mixed, good_reduction: false });
        let t = TypeVector::new(5, [1, 1, 1, 2]).unwrap();
        assert!(reduction_case(&t).good_reduction);
        let t = TypeVector::new(5, [4, 4, 4, 3]).unwrap();
        assert_eq!(reduction_case(&t).label, CaseLabel::Etale);
    }

    #[test]
    fn legendre_datum() {
        let (c, t) = setup(7, 2, [1, 1, 1, 1]);
        let dd = deformation_datum(&c, &t).unwrap();
        assert_eq!((dd.case_label, dd.n, dd.n_prime), (DatumCase::A, 3, 3));
        assert_eq!(dd.theta_rhs, Some(PolyFp::new(7, vec![6, 5, 5, 6])));
        assert_eq!(dd.tails.iter().map(|t| t.multiplicity).sum::<usize>(), 3);
        assert!(dd.tails.iter().all(|t| t.kind == TailKind::New && t.sigma == (4, 3)));
        assert!(dd.vanishing_cycle_ok);
    }

    #[test]
    fn cubic_datum() {
        let (c, t) = setup(7, 3, [1, 1, 2, 2]);
        let dd = deformation_datum(&c, &t).unwrap();
        assert_eq!(dd.permutation, [0, 2, 1, 3]);
        assert_eq!(dd.permuted.a, [1, 2, 1, 2]);
        assert_eq!((dd.case_label, dd.d, dd.exponents), (DatumCase::B, 1, (2, -1)));
        assert_eq!((dd.normal_form.b1, dd.normal_form.b2, dd.normal_form.c), (0, 4, 1));
        assert_eq!(dd.normal_form.lambda_factor, PolyFp::new(7, vec![1, 4, 1]));
        let prim: Vec<&Tail> = dd.tails.iter().filter(|t| t.kind == TailKind::Primitive).collect();
        assert_eq!(prim.len(), 1);
        assert_eq!((prim[0].location.as_str(), prim[0].beta, prim[0].h_b, prim[0].sigma), ("1", 1, 1, (1, 3)));
        let new: usize = dd.tails.iter().filter(|t| t.kind == TailKind::New).map(|t| t.multiplicity).sum();
        assert_eq!(new, 2);
        assert!(dd.vanishing_cycle_ok);
    }

    #[test]
    fn pgl2_odd_d_data() {
        // the only Cartier-compatible equations, found by exhaustive search
        let (c, t) = setup(13, 4, [1, 2, 3, 2]);
        let dd = deformation_datum(&c, &t).unwrap();
        assert_eq!((dd.case_label, dd.stated_exponents, dd.exponents), (DatumCase::D, (3, -1), (1, 1)));
        assert_eq!((dd.n, dd.normal_form.b1, dd.normal_form.b2, dd.normal_form.c), (12, 3, 0, 2));
        let (c, t) = setup(13, 6, [1, 2, 4, 5]);
        let dd = deformation_datum(&c, &t).unwrap();
        assert!(dd.halved);
        assert_eq!((dd.n, dd.normal_form.b1, dd.normal_form.b2, dd.normal_form.c), (6, 0, 1, 1));
        assert_eq!(dd.omega.unit, Some(1));
    }

    #[test]
    fn unit_outside_fp() {
        let (c, t) = setup(11, 5, [1, 3, 3, 3]);
        let dd = deformation_datum(&c, &t).unwrap();
        assert_eq!((dd.omega.unit, dd.omega.rescale, dd.omega.unit_field_degree), (None, None, 2));
    }

    #[test]
    fn vanishing_cycle_rejects_extra_tail() {
        let (c, t) = setup(7, 2, [1, 1, 1, 1]);
        let dd = deformation_datum(&c, &t).unwrap();
        let mut tails = dd.tails.clone();
        tails.push(tails[0].clone());
        assert!(!vanishing_cycle_check(&tails, dd.n_prime));
    }

    #[test]
    fn refusals() {
        let (c, t) = setup(11, 5, [1, 1, 1, 2]);
        assert!(matches!(deformation_datum(&c, &t), Err(Error::NotMixed { .. })));
    }
}
