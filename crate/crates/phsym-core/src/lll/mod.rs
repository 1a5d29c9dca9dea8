//! Lowest-Landau-level realization of particle-hole conjugation and flux
//! insertion.
//!
//! The level at flux `N` is spanned by the analytic orbitals `z^l`,
//! `l < N`, orthonormalized against the Gaussian measure ([`space`]).
//! Three constructions live on top of it:
//!
//! * particle-hole conjugation built from its first-quantized integral
//!   form — pairing states against the fully filled level — and checked
//!   entry by entry against the closed-form conjugation
//!   ([`conjugation`]);
//! * the vortex `U_{z₀}` (multiplication by `∏_j (z_j − z₀)`: one extra
//!   flux quantum at fixed particle number) as an exterior power, and its
//!   particle-hole conjugate, the anti-vortex `U♭` ([`vortex`]);
//! * the vortex/anti-vortex composites `C = U♭∘U` and `C♭`, which add one
//!   particle and two flux quanta, preserve the half-filling line, and
//!   form a Kramers pair: conjugating twice returns `−C` ([`vortex`]).

mod conjugation;
mod space;
mod vortex;

pub use conjugation::{xi_lll, MAX_INTEGRAL_CONJUGATION_FLUX};
pub use space::{lll_norms, LllSpace, MAX_LLL_ORBITALS};
pub use vortex::{antivortex_map, composite_maps, kramers_check, vortex_map, InterSpaceMap};
