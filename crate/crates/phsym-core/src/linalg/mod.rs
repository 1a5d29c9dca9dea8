//! Numerical kernels: sparse matrices, dense Hermitian eigensolvers, and
//! a Chebyshev-filtered subspace iteration for large sparse spectra.

pub mod dense;
pub mod iterative;
pub mod sparse;

pub use dense::{eigh, eigh_real, eigvalsh, lu_solve, lu_solve_matrix, rank, spectrum_distance};
pub use iterative::{lowest_eigenpairs, sparse_lowest_eigenpairs};
pub use sparse::CsrMatrix;
