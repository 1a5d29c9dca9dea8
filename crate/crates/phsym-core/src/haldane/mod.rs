//! The adiabatic route from dimerized free fermions to the spin-1
//! antiferromagnetic chain, with the staggered antiunitary symmetry enforced
//! at every step.
//!
//! Three ingredients are verified independently and then chained together:
//!
//! * [`recoupling_table`] — the angular-momentum recoupling that rewrites a
//!   rung pair of spin-½ doublets in terms of on-rung singlets and triplets,
//!   and the effective couplings `h_J` of a projected exchange bond
//!   ([`effective_couplings`]).
//! * [`projected_spin_hamiltonian`] — the strong-coupling spin ladder
//!   compressed onto the on-rung triplets, which reproduces the spin-1 chain
//!   exactly at full dimerization ([`compare_effective`]) and quadratically in
//!   t/U away from it ([`strong_coupling_check`]).
//! * [`run_deformation`] — the sampled interpolation of the half-filled
//!   two-chain Hubbard ladder, tracking gap, ground degeneracy, and the
//!   staggered-symmetry residual, with
//!   [`endpoint_spin_chain_comparison`] pinning the endpoint to the spin-1
//!   chain.

mod coupling;
mod deformation;
mod effective;

pub use coupling::{
    coupled_tower, effective_couplings, recoupling_table, EffectiveCouplings, RecouplingTable,
};
pub use deformation::{
    endpoint_spin_chain_comparison, run_deformation, DeformationPath, EndpointComparison,
    GapProfile, GapSample, PathPoint, MAX_DEFORMATION_LENGTH,
};
pub use effective::{
    compare_effective, projected_spin_hamiltonian, strong_coupling_check, MAX_PROJECTED_LENGTH,
};
