//! Exact rational computations for Hochschild cohomology of Poincare duality
//! models, shriek maps and derivation complexes of Sullivan models.

pub mod catalog;
pub mod cdga;
pub mod derivations;
pub mod error;
pub mod hochschild;
pub mod linalg;
pub mod poincare;

pub use error::{Error, Result};
