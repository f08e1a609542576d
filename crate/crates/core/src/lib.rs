//! Exact computations with restricted Lie algebras carrying a restricted
//! derivation, over GF(2^k): validation, cohomology of the restricted and
//! derivation-enriched cochain complexes, formal deformations, central
//! extensions and lifts of derivations.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod cochain;
pub mod complex;
pub mod deformation;
pub mod error;
pub mod extension;
pub mod field;
pub mod io;
pub mod linalg;

pub use algebra::{
    ResLieDerPair, RestrictedLieAlgebra, RestrictedRepresentation, ValidationReport,
};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Scalar};
pub use linalg::{Matrix, SubspaceData, Vector};
