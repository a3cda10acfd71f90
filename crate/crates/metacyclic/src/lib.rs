//! Reduction behaviour of metacyclic covers of the projective line branched
//! at four points, and of the Galois closures of their Hurwitz spaces.
//!
//! Everything is exact arithmetic over F_p: Hasse-type invariants, Cartier
//! matrices, braid monodromy groups, good/bad reduction, and the deformation
//! datum describing the stable reduction in the bad case.

pub mod algebra_core;
pub mod cartier;
pub mod error;
pub mod hasse;
pub mod monodromy;
pub mod nielsen;
pub mod reduction;
pub mod report;
pub mod sweep;
pub mod types;

pub use error::{Error, Result};
pub use types::{PrimeContext, TypeVector};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
