//! Exact computations with finite-dimensional Lie algebras over GF(p) and Q:
//! chief series, split chief factors, Chevalley-Eilenberg and restricted
//! cohomology, the restricted enveloping algebra and truncated induction.

pub mod catalog;
pub mod chief;
pub mod classes;
pub mod cohomology;
pub mod error;
pub mod field;
pub mod format;
pub mod induction;
pub mod lie;
pub mod matrix;
pub mod meataxe;
pub mod poly;
pub mod rep;
pub mod report;
pub mod restricted;
pub mod subspace;
pub mod suite;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Fp, Rationals};
pub use lie::{Ideal, LieAlgebra};
pub use matrix::Mat;
pub use rep::Representation;
pub use subspace::Subspace;

/// Size guards for the expensive constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest module handed to the MeatAxe.
    pub max_module_dim: usize,
    /// Largest `p^dim L` for which `u(L)` is built.
    pub max_u_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_module_dim: meataxe::DEFAULT_MAX_DIM,
            max_u_dim: 4096,
        }
    }
}
