//! Exact-diagonalization toolkit for particle-hole conjugation and
//! particle-hole symmetry on finite fermionic Fock spaces.
//!
//! The crate is organized around a small set of desk-scale numerical
//! verifications:
//!
//! - [`fock`] — occupation-number bases, creation/annihilation matrices,
//!   formal operator expressions and their realizations, antilinear maps,
//!   and Weyl-ordered second quantization of one-body and
//!   Bogoliubov-de Gennes Hamiltonians.
//! - [`phc`] — the particle-hole conjugation `Ξ` (two independent
//!   constructions), the flat involution on operator expressions, the
//!   one-body conjugation lemma, lifted single-particle involutions, and
//!   the antiunitary particle-hole symmetry `K = Ξ ∘ Λ(Γ)`.
//! - [`models`] — dimerized chains, cosine bands, a p-wave pairing chain,
//!   Hubbard chains and ladders, and Heisenberg spin chains, together with
//!   the staggered antiunitary symmetry they share.
//! - [`topo`] — spectral splitting, chiral zero-mode counting, winding
//!   numbers, ground-space classification under an antiunitary symmetry,
//!   and the pair-gapping mechanism for protected zero modes.
//! - [`haldane`] — angular-momentum recoupling on a two-leg ladder rung
//!   pair, second-order effective couplings, and an adiabatic deformation
//!   from free dimerized fermions to a spin-1 chain.
//! - [`lll`] — a Gaussian-weighted holomorphic orbital space, the integral
//!   form of the conjugation map, vortex/antivortex insertion maps, and a
//!   Kramers-type sign check on their composites.
//! - [`dirac`] — a two-dimensional lattice Dirac operator in a static
//!   vortex background and its T, C, and CT conjugation relations.
//!
//! All numerics are complex double precision. Construction identities are
//! verified to `1e-12`, spectral identities to `1e-10`; each operation
//! documents its own tolerance.

pub mod dirac;
pub mod error;
pub mod fock;
pub mod haldane;
pub mod linalg;
pub mod lll;
pub mod models;
pub mod phc;
pub mod topo;

pub use error::{PhsymError, Result};

/// Real scalar used throughout the crate.
pub type Real = f64;

/// Complex scalar used throughout the crate.
pub type Scalar = num_complex::Complex64;

/// Dense complex matrix.
pub type CMat = nalgebra::DMatrix<Scalar>;

/// Dense complex column vector.
pub type CVec = nalgebra::DVector<Scalar>;

/// Dense real matrix.
pub type RMat = nalgebra::DMatrix<Real>;

/// Dense real column vector.
pub type RVec = nalgebra::DVector<Real>;

/// Maximum number of orbitals supported by bit-pattern bases.
///
/// Bases are enumerated as `u32` bit patterns and full Fock spaces have
/// dimension `2^N`; 24 orbitals (16.7M basis states) is the desk-scale
/// memory bound.
pub const MAX_ORBITALS: usize = 24;

/// Default residual tolerance for exact construction identities.
pub const TOL_CONSTRUCTION: Real = 1e-12;

/// Default residual tolerance for spectral identities.
pub const TOL_SPECTRAL: Real = 1e-10;
