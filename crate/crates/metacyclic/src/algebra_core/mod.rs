//! Exact arithmetic over F_p and its extensions.

pub mod ext;
pub mod fp;
pub mod mat2;
pub mod poly;

pub use ext::{ExtField, FpExt};
pub use fp::binom_mod_p;
pub use mat2::{group_closure, Mat2};
pub use poly::{Factorization, PolyFp};

use crate::error::Result;

/// Monic gcd by Euclid; both-zero input is an error.
pub fn poly_gcd(f: &PolyFp, g: &PolyFp) -> Result<PolyFp> {
    f.gcd(g)
}

/// Irreducible factors with multiplicities, sorted by degree then coefficients.
pub fn factor_squarefree_irreducible(f: &PolyFp) -> Result<Factorization> {
    f.factor()
}
