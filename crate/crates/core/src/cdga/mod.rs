//! Commutative differential graded algebras over the rationals: free
//! graded-commutative algebras, finite quotients by triangular relations,
//! morphisms and derivations.

pub mod algebra;
pub mod cohomology;
pub mod derivation;
pub mod element;
pub mod morphism;
pub mod parse;

pub use algebra::{AlgebraKind, Basis, DGAlgebra};
pub use cohomology::{betti_numbers, cochain_window, cohomology, verify_quasi_isomorphism, QuasiIsoReport};
pub use derivation::Derivation;
pub use element::{Element, Generator, Monomial};
pub use morphism::AlgebraMorphism;
pub use parse::{parse_polynomial, RawPoly, RawTerm};
