//! Particle-hole conjugation and particle-hole symmetry.
//!
//! The module provides the antilinear conjugation Ξ on the full Fock space
//! (a solved wedge-pairing construction and an equivalent closed form), the
//! flat automorphism on formal operator expressions, multiplicative lifts of
//! single-particle involutions Γ, assembled transformations K = Ξ ∘ ⋀(Γ),
//! and residual checks for antiunitary and chiral symmetry conditions.

mod flat;
mod gamma;
mod xi;

pub use flat::{check_weyl_lemma, flat_expression};
pub use gamma::{check_chiral, check_symmetry, lift_gamma, make_k, GammaInvolution};
pub use xi::{
    wedge_isomorphism, wedge_patterns, xi_fast, xi_oracle, WedgeTop, MAX_ORACLE_ORBITALS,
};
