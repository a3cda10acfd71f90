use metacyclic::algebra_core::{binom_mod_p, fp, group_closure, poly_gcd, Mat2, PolyFp};
use metacyclic::cartier::{chi_part_dimension, hasse_via_cartier, CartierFamily};
use metacyclic::hasse::{dual_ratio_check, hasse_invariant, hgde_params, interior_part, verify_hgde};
use metacyclic::monodromy::{braid_matrices, classify_gamma, GammaClass};
use metacyclic::nielsen::{braid_act_w, NielsenTuple, WVector};
use metacyclic::reduction::{deformation_datum, reduction_case, TailKind};
use metacyclic::sweep::{evaluate, map_jobs, map_jobs_sequential, sweep_jobs, SweepJob};
use metacyclic::types::CaseLabel;
use metacyclic::{PrimeContext, TypeVector};
use proptest::prelude::*;
use std::sync::OnceLock;

const PRIMES: [u32; 8] = [7, 11, 13, 17, 19, 23, 29, 31];

fn jobs() -> &'static [SweepJob] {
    static JOBS: OnceLock<Vec<SweepJob>> = OnceLock::new();
    JOBS.get_or_init(|| sweep_jobs(6, 31))
}

fn mixed() -> &'static [SweepJob] {
    static JOBS: OnceLock<Vec<SweepJob>> = OnceLock::new();
    JOBS.get_or_init(|| jobs().iter().copied().filter(|j| j.tv.case() == CaseLabel::Mixed).collect())
}

fn any_job() -> impl Strategy<Value = SweepJob> {
    (0..jobs().len()).prop_map(|i| jobs()[i])
}

fn mixed_job() -> impl Strategy<Value = SweepJob> {
    (0..mixed().len()).prop_map(|i| mixed()[i])
}

fn poly(p: u32, max_deg: usize) -> impl Strategy<Value = PolyFp> {
    prop::collection::vec(0..p, 0..=max_deg + 1).prop_map(move |c| PolyFp::new(p, c))
}

fn ctx(j: &SweepJob) -> PrimeContext {
    PrimeContext::new(j.p, j.tv.m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverse_and_sqrt(pi in 0..PRIMES.len(), a in 1u32..1000) {
        let p = PRIMES[pi];
        let a = a % p;
        prop_assume!(a != 0);
        prop_assert_eq!(fp::mul(a, fp::inv(a, p), p), 1);
        let sq = fp::mul(a, a, p);
        let r = fp::sqrt(sq, p).unwrap();
        prop_assert_eq!(fp::mul(r, r, p), sq);
    }

    #[test]
    fn binomials_match_polynomial_powers(pi in 0..4usize, n in 0u64..64, r in 0u64..64) {
        let p = PRIMES[pi];
        let n = n % (2 * p as u64 + 1);
        let expanded = PolyFp::new(p, vec![1, 1]).pow(n);
        prop_assert_eq!(binom_mod_p(n, r, p), expanded.coeff(r as usize));
    }

    #[test]
    fn gcd_divides_both(f in poly(13, 8), g in poly(13, 8)) {
        prop_assume!(!f.is_zero() || !g.is_zero());
        let d = poly_gcd(&f, &g).unwrap();
        prop_assert!(f.rem(&d).unwrap().is_zero());
        prop_assert!(g.rem(&d).unwrap().is_zero());
    }

    #[test]
    fn division_identity(f in poly(11, 10), g in poly(11, 5)) {
        prop_assume!(!g.is_zero());
        let (q, r) = f.divrem(&g).unwrap();
        prop_assert_eq!(q.mul(&g).add(&r), f);
        prop_assert!(r.degree() < g.degree() || r.is_zero());
    }

    #[test]
    fn factorization_remultiplies(f in poly(7, 9)) {
        prop_assume!(!f.is_zero());
        let fac = f.factor().unwrap();
        let mut prod = PolyFp::constant(fac.unit, 7);
        for (g, e) in &fac.factors {
            prop_assert!(g.is_irreducible());
            prop_assert_eq!(g.leading(), 1);
            prod = prod.mul(&g.pow(*e as u64));
        }
        prop_assert_eq!(prod, f);
        let mut sorted = fac.factors.clone();
        sorted.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        sorted.dedup_by(|a, b| a.0 == b.0);
        prop_assert_eq!(sorted, fac.factors);
    }

    #[test]
    fn closure_is_a_group(pi in 0..3usize, e in prop::array::uniform4(0u32..31), probes in prop::collection::vec(any::<prop::sample::Index>(), 8)) {
        let p = PRIMES[pi];
        let g1 = Mat2::new(1, e[0] % p, 0, 1, p);
        let g2 = Mat2::new(e[1] % (p - 1) + 1, 0, e[2] % p, 1, p);
        let group = group_closure(&[g1, g2], p, false).unwrap();
        let mut sorted = group.clone();
        sorted.sort();
        let group = sorted;
        for ix in probes {
            let x = ix.get(&group);
            prop_assert!(group.binary_search(&x.inverse(p).unwrap()).is_ok());
            for g in [g1, g2] {
                prop_assert!(group.binary_search(&x.mul(&g, p)).is_ok());
            }
        }
        prop_assert!(group.contains(&Mat2::identity()));
    }

    #[test]
    fn duality_of_dimensions(j in any_job(), k in 1u32..6) {
        let m = j.tv.m;
        let k = k % m;
        prop_assume!(k != 0);
        let zero = j.tv.a.iter().filter(|&&a| (a * k) % m == 0).count() as u32;
        let s = chi_part_dimension(&j.tv, k as i64).unwrap() + chi_part_dimension(&j.tv, (m - k) as i64).unwrap();
        prop_assert_eq!(s, 2 - zero);
    }

    #[test]
    fn rank_pairs_are_allowed(j in any_job(), l in 2u32..31) {
        let c = ctx(&j);
        let l = 2 + l % (j.p - 2);
        let field = metacyclic::algebra_core::ExtField::new(j.p, 1).unwrap();
        let pair = CartierFamily::new(&c, &j.tv).unwrap().rank_pair(&field, &field.from_fp(l)).unwrap();
        prop_assert!([(2, 0), (0, 2), (1, 1), (0, 0)].contains(&pair));
        match j.tv.case() {
            CaseLabel::Multiplicative => prop_assert_eq!(pair, (0, 2)),
            CaseLabel::Etale => prop_assert_eq!(pair, (2, 0)),
            CaseLabel::Mixed => {
                let phi = hasse_invariant(&c, &j.tv).unwrap();
                prop_assert_eq!(pair == (1, 1), phi.eval(l) != 0);
                prop_assert_eq!(pair == (0, 0), phi.eval(l) == 0);
            }
        }
    }

    #[test]
    fn hasse_oracles_agree(j in mixed_job()) {
        let c = ctx(&j);
        let phi = hasse_invariant(&c, &j.tv).unwrap();
        prop_assert_eq!(&phi, &hasse_via_cartier(&c, &j.tv).unwrap());
        prop_assert!(verify_hgde(&phi, hgde_params(&c, &j.tv).unwrap()));
        let al = c.alpha;
        let want = (al * (j.tv.m - j.tv.a[3])).min(al * j.tv.a[2]);
        prop_assert_eq!(phi.degree(), Some(want as usize));
        // interior roots coincide with those of the dual, with the same multiplicities
        let ours = interior_part(&c, &j.tv).unwrap().monic().1;
        let dual = interior_part(&c, &j.tv.dual()).unwrap().monic().1;
        prop_assert_eq!(ours, dual);
        prop_assert!(dual_ratio_check(&c, &j.tv).unwrap().ok);
    }

    #[test]
    fn braid_action_is_consistent(j in any_job(), v1 in 0u32..31, v2 in 0u32..31, i in 1usize..=3) {
        prop_assume!(j.p <= 13);
        let c = ctx(&j);
        let w = WVector { v1: v1 % j.p, v2: v2 % j.p };
        prop_assume!(!w.is_zero());
        let img = braid_act_w(&c, &j.tv, i, w).unwrap();
        let t = NielsenTuple::from_w(&c, &j.tv, img);
        prop_assert!(!img.is_zero());
        prop_assert!(t.in_classes(&c, &j.tv));
        prop_assert!(t.generates(&c));
        let b = braid_matrices(&c, &j.tv).unwrap();
        prop_assert_eq!(b[i - 1].apply_row((w.v1, w.v2), j.p), (img.v1, img.v2));
        // the psi-scalar action commutes with the braid action
        let scaled = braid_act_w(&c, &j.tv, i, w.scale(c.zeta, j.p)).unwrap();
        prop_assert_eq!(scaled, img.scale(c.zeta, j.p));
    }

    #[test]
    fn data_satisfy_their_identities(j in mixed_job()) {
        let c = ctx(&j);
        prop_assert!(!reduction_case(&j.tv).good_reduction);
        if classify_gamma(&c, &j.tv).unwrap().classification != GammaClass::ContainsSL2 {
            return Ok(());
        }
        let d = deformation_datum(&c, &j.tv).unwrap();
        let nf = &d.normal_form;
        let g = [nf.b1, nf.b2, nf.c, d.n].into_iter().fold(0, metacyclic::types::gcd);
        prop_assert_eq!(g, 1);
        prop_assert_eq!(&nf.lambda_factor, &interior_part(&c, &d.permuted).unwrap().monic().1);
        for t in &d.tails {
            match t.kind {
                TailKind::Primitive => prop_assert!(t.sigma.0 > 0 && t.sigma.0 < t.sigma.1),
                TailKind::New => {
                    let g = metacyclic::types::gcd(j.p + 1, j.p - 1);
                    prop_assert_eq!(t.sigma, ((j.p + 1) / g, (j.p - 1) / g));
                }
            }
        }
        prop_assert!(d.vanishing_cycle_ok);
        prop_assert!(d.omega.cartier_identity);
        prop_assert_eq!(fp::mult_order(d.omega.c0, j.p), d.omega.unit_field_degree);
    }
}

#[test]
fn parallel_map_preserves_order() {
    let sample: Vec<SweepJob> = jobs().iter().copied().filter(|j| j.p <= 13).collect();
    assert_eq!(map_jobs(&sample, evaluate), map_jobs_sequential(&sample, evaluate));
}

#[test]
fn reduction_case_depends_only_on_the_sum() {
    for m in 2..=6 {
        for tv in TypeVector::all(m) {
            let want = match tv.sum() / m {
                1 => CaseLabel::Multiplicative,
                2 => CaseLabel::Mixed,
                _ => CaseLabel::Etale,
            };
            assert_eq!(reduction_case(&tv).label, want);
            assert_eq!(reduction_case(&tv.dual()).label == CaseLabel::Mixed, want == CaseLabel::Mixed);
        }
    }
}
