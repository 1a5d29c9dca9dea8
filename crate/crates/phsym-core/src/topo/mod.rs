//! Topological diagnostics for particle-hole-symmetric systems: spectral
//! splitting of single-particle Hamiltonians, chiral zero-mode counting,
//! winding numbers of gapped off-diagonal bands, pairwise gapping of many-
//! body zero modes, and the fourfold classification of ground spaces under
//! an antiunitary charge-reversing symmetry.

mod chiral;
mod classify;
mod gapping;
mod split;
mod winding;

pub use chiral::{chiral_invariant, edge_zero_mode_imbalance};
pub use classify::{
    classify_ground_space, fermion_parity_operator, CaseLabel, ClassificationResult,
    ParityRelation,
};
pub use gapping::{zero_mode_pair_gapping, PairGapping};
pub use split::{split_spectrum, SpectralSplit};
pub use winding::winding_number;
