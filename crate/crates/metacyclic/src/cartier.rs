//! Cartier operator on the eigen-differentials of the superelliptic curve
//! `y^m = x^{A1} (x-1)^{A2} (x-lambda)^{A4}` (the point at infinity carries
//! the remaining exponent), and the Frobenius ranks derived from it.
//!
//! For the character index `j` we work on the space of regular differentials
//! dual to `L_{chi^j}`: basis `omega_k = x^k dx / y_j`, `k < dim`, where
//! `y_j^m = x^{<j a1>} (x-1)^{<j a2>} (x-lambda)^{<j a4>}`. Equivalently
//! `omega_k = z^{-j} x^k dx / (x (x-1)(x-lambda))` with `z^{-j}` reduced.
//! Writing `1/y = f^alpha / y^p` gives
//! `C(omega_k) = sum_l N[l][k]^{1/p} omega_l`,
//! `N[l][k] = [x^{p(l+1)-k-1}] f^alpha`.

use crate::algebra_core::{ExtField, FpExt, PolyFp};
use crate::error::{ensure, Error, Result};
use crate::types::{PrimeContext, TypeVector};
use serde::Serialize;

pub const BASIS_DESCRIPTION: &str =
    "omega_k = x^k dx / y_j, y_j^m = x^<j a1> (x-1)^<j a2> (x-lambda)^<j a4>, k < dim";

/// `dim L_{chi^j} = (sum <j a_i> - m) / m`.
pub fn chi_part_dimension(tv: &TypeVector, j: i64) -> Result<u32> {
    let m = tv.m as i64;
    let jr = j.rem_euclid(m);
    if jr == 0 {
        return Err(Error::InvalidArgument(format!("character index {j} is 0 mod m = {m}")));
    }
    let s: u32 = tv.twist(jr as u32).iter().sum();
    Ok((s - tv.m) / tv.m)
}

/// Polynomials in x whose coefficients are polynomials in lambda.
#[derive(Clone, Debug)]
struct XPoly {
    p: u32,
    c: Vec<PolyFp>,
}

impl XPoly {
    fn monomial(p: u32, k: usize) -> Self {
        let mut c = vec![PolyFp::zero(p); k + 1];
        c[k] = PolyFp::one(p);
        XPoly { p, c }
    }

    /// Multiply by `x - r` with `r` a polynomial in lambda.
    fn mul_linear(&mut self, r: &PolyFp) {
        let mut out = vec![PolyFp::zero(self.p); self.c.len() + 1];
        for (i, a) in self.c.iter().enumerate() {
            out[i + 1] = out[i + 1].add(a);
            out[i] = out[i].sub(&a.mul(r));
        }
        self.c = out;
    }

    fn coeff(&self, i: usize) -> PolyFp {
        self.c.get(i).cloned().unwrap_or_else(|| PolyFp::zero(self.p))
    }
}

/// `x^{e1} (x-1)^{e2} (x-lambda)^{e4}` expanded over F_p[lambda].
fn expand(p: u32, e1: usize, e2: usize, e4: usize) -> XPoly {
    let mut f = XPoly::monomial(p, e1);
    let one = PolyFp::one(p);
    let lam = PolyFp::x(p);
    for _ in 0..e2 {
        f.mul_linear(&one);
    }
    for _ in 0..e4 {
        f.mul_linear(&lam);
    }
    f
}

/// Order of `omega_k` at the points above each branch point `0, 1, inf, lambda`.
pub fn basis_divisor(tv: &TypeVector, j: u32, k: u32) -> [i64; 4] {
    let m = tv.m as i64;
    let a = tv.twist(j).map(|x| x as i64);
    let s: i64 = a.iter().sum();
    let ram = |x: i64| m / crate::types::gcd_i64(x, m);
    // finite points: ord = e (k_i - A/m) + e - 1
    let finite = |x: i64, kk: i64| {
        let e = ram(x);
        (e * (kk * m - x)) / m + e - 1
    };
    let e3 = ram(a[2]);
    let ord_inf = (e3 * (-(k as i64) * m + (s - a[2]) - 2 * m)) / m + e3 - 1;
    [finite(a[0], k as i64), finite(a[1], 0), ord_inf, finite(a[3], 0)]
}

/// Cartier matrix over an arbitrary coefficient type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartierMatrix<T> {
    pub j: u32,
    pub dim: u32,
    /// `entries[l][k] = N[l][k]`; the operator itself is `N` followed by the
    /// inverse Frobenius on coordinates.
    pub entries: Vec<Vec<T>>,
    pub semilinear: bool,
    /// Set when the space is zero-dimensional.
    pub empty: bool,
    pub basis: &'static str,
}

/// Cartier matrix with entries in F_p[lambda] (lambda symbolic).
pub fn cartier_matrix_symbolic(
    ctx: &PrimeContext,
    tv: &TypeVector,
    j: u32,
) -> Result<CartierMatrix<PolyFp>> {
    let dim = chi_part_dimension(tv, j as i64)?;
    let jr = j % tv.m;
    let p = ctx.p;
    for k in 0..dim {
        let ords = basis_divisor(tv, jr, k);
        ensure!(ords.iter().all(|&o| o >= 0), "basis differential {k} not regular: {ords:?}");
    }
    let a = tv.twist(jr);
    let al = ctx.alpha as usize;
    let f = expand(p, al * a[0] as usize, al * a[1] as usize, al * a[3] as usize);
    let pu = p as usize;
    let mut entries = vec![vec![PolyFp::zero(p); dim as usize]; dim as usize];
    for k in 0..dim as usize {
        // every image coefficient beyond the basis must vanish (regularity of C omega)
        let mut l = 0;
        while pu * (l + 1) > k && pu * (l + 1) - k - 1 < f.c.len() {
            let c = f.coeff(pu * (l + 1) - k - 1);
            if l < dim as usize {
                entries[l][k] = c;
            } else {
                ensure!(c.is_zero(), "Cartier image of omega_{k} leaves the regular space");
            }
            l += 1;
        }
    }
    Ok(CartierMatrix { j: jr, dim, entries, semilinear: true, empty: dim == 0, basis: BASIS_DESCRIPTION })
}

fn check_lambda(field: &ExtField, lambda: &FpExt) -> Result<()> {
    if lambda.is_zero() || *lambda == field.one() {
        return Err(Error::DegenerateLambda("lambda must differ from 0 and 1".into()));
    }
    Ok(())
}

/// Cartier matrix specialised at a value of lambda in some F_{p^k}.
pub fn cartier_matrix(
    ctx: &PrimeContext,
    tv: &TypeVector,
    field: &ExtField,
    lambda: &FpExt,
    j: u32,
) -> Result<CartierMatrix<FpExt>> {
    check_lambda(field, lambda)?;
    let sym = cartier_matrix_symbolic(ctx, tv, j)?;
    Ok(specialise(&sym, field, lambda))
}

fn specialise(sym: &CartierMatrix<PolyFp>, field: &ExtField, lambda: &FpExt) -> CartierMatrix<FpExt> {
    CartierMatrix {
        j: sym.j,
        dim: sym.dim,
        entries: sym
            .entries
            .iter()
            .map(|row| row.iter().map(|e| field.eval(e, lambda)).collect())
            .collect(),
        semilinear: true,
        empty: sym.empty,
        basis: sym.basis,
    }
}

/// Rank of the `dim`-fold iterate of the semilinear operator, i.e. the rank
/// of `N^{(p^{d-1})} ... N^{(p)} N`.
pub fn stable_rank(field: &ExtField, m: &CartierMatrix<FpExt>) -> u32 {
    let d = m.dim as usize;
    if d == 0 {
        return 0;
    }
    let mut prod = m.entries.clone();
    let mut twisted = m.entries.clone();
    for _ in 1..d {
        twisted = twisted.iter().map(|r| r.iter().map(|e| field.frobenius(e)).collect()).collect();
        prod = mat_mul(field, &twisted, &prod);
    }
    rank(field, prod)
}

fn mat_mul(f: &ExtField, a: &[Vec<FpExt>], b: &[Vec<FpExt>]) -> Vec<Vec<FpExt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&a[i][k], &b[k][j]))))
                .collect()
        })
        .collect()
}

fn rank(f: &ExtField, mut a: Vec<Vec<FpExt>>) -> u32 {
    let n = a.len();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..n).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, piv);
        let inv = f.inv(&a[r][col]).expect("nonzero pivot");
        for i in 0..n {
            if i != r && !a[i][col].is_zero() {
                let factor = f.mul(&a[i][col], &inv);
                for c in col..n {
                    let t = f.mul(&factor, &a[r][c]);
                    a[i][c] = f.sub(&a[i][c], &t);
                }
            }
        }
        r += 1;
    }
    r as u32
}

/// Symbolic Cartier data for the two characters `chi` and `chi^{-1}`; lets
/// lambda-sweeps reuse the expansion.
#[derive(Clone, Debug)]
pub struct CartierFamily {
    pub chi: CartierMatrix<PolyFp>,
    pub chi_inv: CartierMatrix<PolyFp>,
}

impl CartierFamily {
    pub fn new(ctx: &PrimeContext, tv: &TypeVector) -> Result<Self> {
        Ok(CartierFamily {
            chi: cartier_matrix_symbolic(ctx, tv, 1)?,
            chi_inv: cartier_matrix_symbolic(ctx, tv, tv.m - 1)?,
        })
    }

    pub fn rank_pair(&self, field: &ExtField, lambda: &FpExt) -> Result<(u32, u32)> {
        check_lambda(field, lambda)?;
        let a = stable_rank(field, &specialise(&self.chi, field, lambda));
        let b = stable_rank(field, &specialise(&self.chi_inv, field, lambda));
        ensure!(
            matches!((a, b), (2, 0) | (0, 2) | (1, 1) | (0, 0)),
            "rank pair ({a}, {b}) outside the admissible set"
        );
        Ok((a, b))
    }
}

/// `(a, b)`: stable Frobenius ranks on `L_chi` and `L_{chi^{-1}}`.
pub fn frobenius_rank_pair(
    ctx: &PrimeContext,
    tv: &TypeVector,
    field: &ExtField,
    lambda: &FpExt,
) -> Result<(u32, u32)> {
    CartierFamily::new(ctx, tv)?.rank_pair(field, lambda)
}

/// Whether the Cartier operator is bijective on the one-dimensional
/// eigenspace containing `z dx / (x(x-1)(x-lambda))`.
pub fn is_a_ordinary(
    ctx: &PrimeContext,
    tv: &TypeVector,
    field: &ExtField,
    lambda: &FpExt,
) -> Result<bool> {
    tv.require_mixed()?;
    let m = cartier_matrix(ctx, tv, field, lambda, tv.m - 1)?;
    Ok(!m.entries[0][0].is_zero())
}

/// Coefficient of `x^p` in `x^{1+alpha a1*} (x-1)^{alpha a2*} (x-lambda)^{alpha a4*}`,
/// computed by honest expansion over F_p[lambda].
pub fn hasse_via_cartier(ctx: &PrimeContext, tv: &TypeVector) -> Result<PolyFp> {
    tv.require_mixed()?;
    let d = tv.dual();
    let al = ctx.alpha as usize;
    let e = expand(ctx.p, 1 + al * d.a[0] as usize, al * d.a[1] as usize, al * d.a[3] as usize);
    Ok(e.coeff(ctx.p as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(p: u32, m: u32, a: [u32; 4]) -> (PrimeContext, TypeVector) {
        (PrimeContext::new(p, m).unwrap(), TypeVector::new(m, a).unwrap())
    }

    #[test]
    fn dimensions() {
        let t = TypeVector::new(2, [1, 1, 1, 1]).unwrap();
        assert_eq!(chi_part_dimension(&t, 1).unwrap(), 1);
        let t = TypeVector::new(5, [1, 1, 1, 2]).unwrap();
        assert_eq!(chi_part_dimension(&t, 1).unwrap(), 0);
        let t = TypeVector::new(3, [1, 1, 2, 2]).unwrap();
        assert_eq!(chi_part_dimension(&t, 2).unwrap(), 1);
        assert!(chi_part_dimension(&t, 3).is_err());
    }

    #[test]
    fn extraction_examples() {
        let (c, t) = setup(7, 2, [1, 1, 1, 1]);
        assert_eq!(hasse_via_cartier(&c, &t).unwrap(), PolyFp::new(7, vec![6, 5, 5, 6]));
        let (c, t) = setup(7, 3, [1, 1, 2, 2]);
        assert_eq!(hasse_via_cartier(&c, &t).unwrap(), PolyFp::new(7, vec![1, 1, 6]));
        let (c, t) = setup(7, 3, [1, 2, 1, 2]);
        assert_eq!(hasse_via_cartier(&c, &t).unwrap(), PolyFp::new(7, vec![1, 4, 1]));
        let (c, t) = setup(11, 5, [1, 1, 1, 2]);
        assert!(matches!(hasse_via_cartier(&c, &t), Err(Error::NotMixed { .. })));
    }

    #[test]
    fn matrices() {
        let f7 = ExtField::new(7, 1).unwrap();
        let (c, t) = setup(7, 2, [1, 1, 1, 1]);
        let sym = cartier_matrix_symbolic(&c, &t, 1).unwrap();
        assert_eq!(sym.entries, vec![vec![PolyFp::new(7, vec![6, 5, 5, 6])]]);
        let (c, t) = setup(7, 3, [1, 1, 2, 2]);
        let m = cartier_matrix(&c, &t, &f7, &f7.from_fp(3), 1).unwrap();
        assert_eq!(m.entries, vec![vec![f7.from_fp(2)]]);
        let (c, t) = setup(11, 5, [1, 1, 1, 2]);
        let f11 = ExtField::new(11, 1).unwrap();
        let m = cartier_matrix(&c, &t, &f11, &f11.from_fp(3), 1).unwrap();
        assert!(m.empty && m.entries.is_empty());
        assert!(matches!(
            cartier_matrix(&c, &t, &f11, &f11.one(), 1),
            Err(Error::DegenerateLambda(_))
        ));
    }

    #[test]
    fn rank_pairs() {
        let f11 = ExtField::new(11, 1).unwrap();
        let (c, t) = setup(11, 5, [1, 1, 1, 2]);
        assert_eq!(frobenius_rank_pair(&c, &t, &f11, &f11.from_fp(3)).unwrap(), (0, 2));
        let (c, t) = setup(11, 5, [4, 4, 4, 3]);
        assert_eq!(frobenius_rank_pair(&c, &t, &f11, &f11.from_fp(3)).unwrap(), (2, 0));
        let f7 = ExtField::new(7, 1).unwrap();
        let (c, t) = setup(7, 2, [1, 1, 1, 1]);
        assert_eq!(frobenius_rank_pair(&c, &t, &f7, &f7.from_fp(3)).unwrap(), (1, 1));
        assert_eq!(frobenius_rank_pair(&c, &t, &f7, &f7.from_fp(6)).unwrap(), (0, 0));
    }

    #[test]
    fn ordinarity() {
        let f7 = ExtField::new(7, 1).unwrap();
        let (c, t) = setup(7, 2, [1, 1, 1, 1]);
        assert!(!is_a_ordinary(&c, &t, &f7, &f7.from_fp(6)).unwrap());
        assert!(is_a_ordinary(&c, &t, &f7, &f7.from_fp(3)).unwrap());
        let f49 = ExtField::new(7, 2).unwrap();
        let (c, t) = setup(7, 3, [1, 2, 1, 2]);
        let roots = f49.roots(&PolyFp::new(7, vec![1, 4, 1])).unwrap();
        assert!(!is_a_ordinary(&c, &t, &f49, &roots[0]).unwrap());
        assert!(is_a_ordinary(&c, &t, &f49, &f49.generator()).unwrap());
    }
}
