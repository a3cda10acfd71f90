//! Batch evaluation over many (p, type) pairs. Jobs are independent; results
//! always come back in input order, whether run on the rayon pool or not.

use crate::algebra_core::fp;
use crate::error::Error;
use crate::hasse::supersingular_set_with;
use crate::monodromy::{classify_gamma, GaloisGroup, GammaClass};
use crate::nielsen::signature;
use crate::reduction::{deformation_datum, reduction_case, DatumCase};
use crate::types::{CaseLabel, PrimeContext, TypeVector};
use crate::TOOL_VERSION;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SweepJob {
    pub p: u32,
    pub tv: TypeVector,
}

/// All types with `m in 2..=max_m`, primes `5 < p <= max_p` with `p = 1 mod m`;
/// ordered by `m`, then `p`, then lexicographically in `a`.
pub fn sweep_jobs(max_m: u32, max_p: u32) -> Vec<SweepJob> {
    let mut jobs = Vec::new();
    for m in 2..=max_m {
        let types = TypeVector::all(m);
        for p in (7..=max_p).filter(|&p| fp::is_prime(p) && (p - 1) % m == 0) {
            jobs.extend(types.iter().map(|&tv| SweepJob { p, tv }));
        }
    }
    jobs
}

/// Order-preserving map, on the rayon pool when the `parallel` feature is on.
pub fn map_jobs<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub fn map_jobs_sequential<T, R, F: Fn(&T) -> R>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumSummary {
    pub case: DatumCase,
    pub n: u32,
    pub n_prime: u32,
    pub permutation: [usize; 4],
    pub normal_form: (u32, u32, u32),
    pub lambda_degree: usize,
    pub tails: usize,
    pub vanishing_cycle_ok: bool,
    pub omega_c0: u32,
    pub omega_unit_field_degree: u32,
    pub omega_unit_rational: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub p: u32,
    pub m: u32,
    pub a: [u32; 4],
    pub case: CaseLabel,
    pub good: bool,
    pub signature: [u32; 3],
    pub gamma: Option<GammaClass>,
    pub gamma_order: Option<u64>,
    pub galois: Option<GaloisGroup>,
    pub supersingular_count: Option<usize>,
    pub datum: Option<DatumSummary>,
    /// Why `datum` is absent for a mixed type (exceptional, or `d = m`).
    pub datum_skipped: Option<String>,
    /// Internal-consistency failures; empty on a healthy run.
    pub errors: Vec<String>,
}

pub fn evaluate(job: &SweepJob) -> SweepRow {
    let (p, tv) = (job.p, &job.tv);
    let rc = reduction_case(tv);
    let mut row = SweepRow {
        p,
        m: tv.m,
        a: tv.a,
        case: rc.label,
        good: rc.good_reduction,
        signature: [0; 3],
        gamma: None,
        gamma_order: None,
        galois: None,
        supersingular_count: None,
        datum: None,
        datum_skipped: None,
        errors: Vec::new(),
    };
    let ctx = match PrimeContext::new(p, tv.m) {
        Ok(c) => c,
        Err(e) => {
            row.errors.push(e.to_string());
            return row;
        }
    };
    row.signature = signature(&ctx, tv);
    match classify_gamma(&ctx, tv) {
        Ok(g) => {
            row.gamma = Some(g.classification);
            row.gamma_order = Some(g.order);
            row.galois = g.contains_sl2.then_some(g.galois_group);
        }
        Err(e) => row.errors.push(format!("gamma: {e}")),
    }
    if rc.label != CaseLabel::Mixed {
        return row;
    }
    match supersingular_set_with(&ctx, tv, false) {
        Ok(h) => row.supersingular_count = Some(h.count),
        Err(e) => row.errors.push(format!("hasse: {e}")),
    }
    match deformation_datum(&ctx, tv) {
        Ok(d) => {
            row.datum = Some(DatumSummary {
                case: d.case_label,
                n: d.n,
                n_prime: d.n_prime,
                permutation: d.permutation,
                normal_form: (d.normal_form.b1, d.normal_form.b2, d.normal_form.c),
                lambda_degree: d.normal_form.lambda_factor.deg_or_zero(),
                tails: d.tails.iter().map(|t| t.multiplicity).sum(),
                vanishing_cycle_ok: d.vanishing_cycle_ok,
                omega_c0: d.omega.c0,
                omega_unit_field_degree: d.omega.unit_field_degree,
                omega_unit_rational: d.omega.rescale.is_some(),
            })
        }
        Err(e @ (Error::Exceptional(_) | Error::DEqualsM)) => row.datum_skipped = Some(e.to_string()),
        Err(e) => row.errors.push(format!("datum: {e}")),
    }
    row
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub schema: u32,
    pub tool_version: &'static str,
    pub max_m: u32,
    pub max_p: u32,
    pub rows: Vec<SweepRow>,
}

pub fn run(max_m: u32, max_p: u32) -> SweepReport {
    let jobs = sweep_jobs(max_m, max_p);
    report(max_m, max_p, map_jobs(&jobs, evaluate))
}

pub fn run_sequential(max_m: u32, max_p: u32) -> SweepReport {
    let jobs = sweep_jobs(max_m, max_p);
    report(max_m, max_p, map_jobs_sequential(&jobs, evaluate))
}

fn report(max_m: u32, max_p: u32, rows: Vec<SweepRow>) -> SweepReport {
    SweepReport { schema: crate::report::SCHEMA, tool_version: TOOL_VERSION, max_m, max_p, rows }
}

/// One line per (m, p): counts by case, exceptional types, datum cases and failures.
pub fn summary_table(rep: &SweepReport) -> String {
    let mut out = format!(
        "{:>2} {:>3} {:>5} {:>5} {:>5} {:>5} {:>5} {:>14} {:>6} {:>6}\n",
        "m", "p", "types", "mult", "mixed", "etale", "exc", "data a/b/c/d", "F_p-u", "errors"
    );
    let mut keys: Vec<(u32, u32)> = rep.rows.iter().map(|r| (r.m, r.p)).collect();
    keys.dedup();
    for (m, p) in keys {
        let rows: Vec<&SweepRow> = rep.rows.iter().filter(|r| r.m == m && r.p == p).collect();
        let count = |f: &dyn Fn(&SweepRow) -> bool| rows.iter().filter(|r| f(r)).count();
        let by_case = |c: DatumCase| count(&|r| r.datum.as_ref().is_some_and(|d| d.case == c));
        out.push_str(&format!(
            "{:>2} {:>3} {:>5} {:>5} {:>5} {:>5} {:>5} {:>14} {:>6} {:>6}\n",
            m,
            p,
            rows.len(),
            count(&|r| r.case == CaseLabel::Multiplicative),
            count(&|r| r.case == CaseLabel::Mixed),
            count(&|r| r.case == CaseLabel::Etale),
            count(&|r| r.case == CaseLabel::Mixed && r.datum_skipped.is_some()),
            format!(
                "{}/{}/{}/{}",
                by_case(DatumCase::A),
                by_case(DatumCase::B),
                by_case(DatumCase::C),
                by_case(DatumCase::D)
            ),
            count(&|r| r.datum.as_ref().is_some_and(|d| d.omega_unit_rational)),
            count(&|r| !r.errors.is_empty()),
        ));
    }
    out
}
