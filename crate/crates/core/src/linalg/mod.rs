//! Exact linear algebra over the rationals: sparse vectors and matrices,
//! row reduction, kernels, images, solving, and cohomology of finite
//! cochain complex windows.

pub mod complex;
pub mod matrix;
pub mod scalar;
pub mod vector;

pub use complex::{induced_matrix, induced_rank, CochainComplex, CohomologyGroup};
pub use matrix::{
    image_basis, inverse, kernel_basis, quotient_dim_and_reps, rref, solve, EchelonBasis,
    SparseMatrix, SubspaceBasis,
};
pub use scalar::Scalar;
pub use vector::SparseVec;
