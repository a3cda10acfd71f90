//! Serializable reports behind the command line: one per subcommand, each
//! carrying the prime context and tool version so a report can be reproduced.

use crate::algebra_core::{ExtField, PolyFp};
use crate::cartier::CartierFamily;
use crate::error::{Error, Result};
use crate::hasse::{supersingular_set, HasseReport};
use crate::monodromy::{class_vector, classify_gamma, GaloisGroup, GammaClass};
use crate::nielsen::cusps_and_signature;
use crate::reduction::{deformation_datum, reduction_case, DeformationDatum};
use crate::types::{CaseLabel, PrimeContext, TypeVector};
use crate::TOOL_VERSION;
use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Header {
    pub schema: u32,
    pub command: &'static str,
    pub p: u32,
    pub m: u32,
    pub a: [u32; 4],
    pub zeta: u32,
    pub xi: u32,
    pub primitive_root: u32,
    pub tool_version: &'static str,
}

impl Header {
    pub fn new(command: &'static str, ctx: &PrimeContext, tv: &TypeVector) -> Self {
        Header {
            schema: SCHEMA,
            command,
            p: ctx.p,
            m: tv.m,
            a: tv.a,
            zeta: ctx.zeta,
            xi: ctx.xi,
            primitive_root: ctx.primitive_root,
            tool_version: TOOL_VERSION,
        }
    }
}

/// Why a field was left null.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Omitted {
    pub field: &'static str,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorEntry {
    pub factor: PolyFp,
    pub degree: usize,
    pub field_modulus: PolyFp,
    pub roots: Vec<PolyFp>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaEntry {
    pub lambda: u32,
    pub phi_value: u32,
    pub supersingular: bool,
    /// Stable ranks of the Cartier operator on the `chi` and `chi^{-1}` eigenspaces.
    pub rank_pair: (u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HasseJson {
    #[serde(flatten)]
    pub header: Header,
    /// Coefficients, constant term first.
    pub phi: PolyFp,
    pub phi_dual: PolyFp,
    pub ode_params: (u32, u32, u32),
    pub zero_orders: (u32, u32),
    pub unit: u32,
    pub factors: Vec<FactorEntry>,
    pub count: usize,
    pub ratio_exponents: (i64, i64),
    pub ratio_unit: u32,
    pub lambdas: Vec<LambdaEntry>,
}

pub fn hasse_report(ctx: &PrimeContext, tv: &TypeVector, lambdas: &[u32]) -> Result<HasseJson> {
    let r: HasseReport = supersingular_set(ctx, tv)?;
    let p = ctx.p;
    let mut entries = Vec::with_capacity(lambdas.len());
    if !lambdas.is_empty() {
        let field = ExtField::new(p, 1)?;
        let fam = CartierFamily::new(ctx, tv)?;
        for &l in lambdas {
            let l = l % p;
            if l == 0 || l == 1 {
                return Err(Error::DegenerateLambda(format!("lambda = {l}")));
            }
            let value = r.phi.eval(l);
            entries.push(LambdaEntry {
                lambda: l,
                phi_value: value,
                supersingular: value == 0,
                rank_pair: fam.rank_pair(&field, &field.from_fp(l))?,
            });
        }
    }
    Ok(HasseJson {
        header: Header::new("hasse", ctx, tv),
        phi: r.phi,
        phi_dual: r.phi_dual,
        ode_params: r.ode_params,
        zero_orders: (r.zero_order_at_0, r.zero_order_at_1),
        unit: r.unit,
        factors: r
            .supersingular_factors
            .into_iter()
            .map(|f| FactorEntry { factor: f.factor, degree: f.degree, field_modulus: f.field_modulus, roots: f.roots })
            .collect(),
        count: r.count,
        ratio_exponents: r.ratio_exponents,
        ratio_unit: r.ratio_unit,
        lambdas: entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyJson {
    #[serde(flatten)]
    pub header: Header,
    pub case: CaseLabel,
    pub good: bool,
    pub signature: [u32; 3],
    /// Lcm of the cusp orbit lengths of each braid generator.
    pub cusp_lcm: [u64; 3],
    pub nielsen_class_size: usize,
    pub gamma: Option<GammaClass>,
    pub gamma_order: Option<u64>,
    pub det_subgroup: Option<Vec<u32>>,
    pub galois: Option<GaloisGroup>,
    pub class_vector: Option<[String; 3]>,
    /// Frobenius rank pairs at `lambda = 2, ..., p-1`.
    pub rank_pairs: Vec<(u32, (u32, u32))>,
    pub omitted: Vec<Omitted>,
}

pub fn classify_report(ctx: &PrimeContext, tv: &TypeVector) -> Result<ClassifyJson> {
    let rc = reduction_case(tv);
    let cusps = cusps_and_signature(ctx, tv)?;
    let mut omitted = Vec::new();
    let gamma = match classify_gamma(ctx, tv) {
        Ok(g) => Some(g),
        Err(e @ (Error::InvalidPrime(_) | Error::SizeGuard { .. })) => {
            for field in ["gamma", "gamma_order", "det_subgroup", "galois"] {
                omitted.push(Omitted { field, reason: e.to_string() });
            }
            None
        }
        Err(e) => return Err(e),
    };
    let galois = match &gamma {
        Some(g) if g.classification == GammaClass::ContainsSL2 => Some(g.galois_group),
        Some(g) => {
            omitted.push(Omitted {
                field: "galois",
                reason: format!("Gamma is {:?} and does not contain SL_2(p)", g.classification),
            });
            None
        }
        None => None,
    };
    let class_vector = match class_vector(ctx, tv) {
        Ok(cv) => Some(cv.map(|c| c.name())),
        Err(Error::InvalidType(reason)) => {
            omitted.push(Omitted { field: "class_vector", reason });
            None
        }
        Err(e) => return Err(e),
    };
    let field = ExtField::new(ctx.p, 1)?;
    let fam = CartierFamily::new(ctx, tv)?;
    let rank_pairs =
        (2..ctx.p).map(|l| Ok((l, fam.rank_pair(&field, &field.from_fp(l))?))).collect::<Result<Vec<_>>>()?;
    Ok(ClassifyJson {
        header: Header::new("classify", ctx, tv),
        case: rc.label,
        good: rc.good_reduction,
        signature: cusps.signature,
        cusp_lcm: cusps.observed,
        nielsen_class_size: cusps.nielsen_class_size,
        gamma: gamma.as_ref().map(|g| g.classification),
        gamma_order: gamma.as_ref().map(|g| g.order),
        det_subgroup: gamma.as_ref().map(|g| g.det_subgroup.clone()),
        galois,
        class_vector,
        rank_pairs,
        omitted,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefDatumJson {
    #[serde(flatten)]
    pub header: Header,
    /// A unit in `F_p^x` fixing the differential, when the recorded equation admits one.
    pub omega_unit: Option<u32>,
    #[serde(flatten)]
    pub datum: DeformationDatum,
}

pub fn defdatum_report(ctx: &PrimeContext, tv: &TypeVector) -> Result<DefDatumJson> {
    let datum = deformation_datum(ctx, tv)?;
    Ok(DefDatumJson { header: Header::new("defdatum", ctx, tv), omega_unit: datum.omega.unit, datum })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

/// Aligned `key  value` lines from the top level of a report; nested values stay compact JSON.
pub fn to_text<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("reports serialize");
    let serde_json::Value::Object(map) = v else {
        return v.to_string();
    };
    let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in &map {
        let shown = match v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&format!("{k:<width$}  {shown}\n"));
    }
    out
}
