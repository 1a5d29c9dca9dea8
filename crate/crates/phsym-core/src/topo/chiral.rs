//! The chiral zero-mode invariant: the imbalance of Γ-eigenvalues on the
//! zero-mode subspace of a Γ-anticommuting Hamiltonian.

use crate::error::{PhsymError, Result};
use crate::fock::SingleParticleHamiltonian;
use crate::linalg::eigh;
use crate::phc::{check_chiral, GammaInvolution};
use crate::topo::split::{split_spectrum, SpectralSplit};
use crate::{Real, Scalar, TOL_SPECTRAL};

/// Eigenvalues of Γ restricted to the zero-mode block, each required to
/// round to ±1.
fn gamma_signs_on_zero_modes(split: &SpectralSplit, g: &GammaInvolution) -> Result<Vec<Real>> {
    let zero = split.zero();
    if zero.ncols() == 0 {
        return Ok(Vec::new());
    }
    let restricted = zero.adjoint() * g.matrix() * zero;
    let (values, _) = eigh(&restricted)?;
    for &v in &values {
        let defect = (v.abs() - 1.0).abs();
        if defect > 1e-6 {
            return Err(PhsymError::SelfCheckFailed {
                check: "Γ eigenvalue on the zero-mode space rounds to ±1".to_string(),
                residual: defect,
                tolerance: 1e-6,
            });
        }
    }
    Ok(values)
}

/// The integer invariant I = dim ker(Γ−1)|_{V₀} − dim ker(Γ+1)|_{V₀}.
///
/// Requires Γ to anticommute with `h` (that is what makes Γ act on the
/// zero-mode space in the first place); zero modes are isolated with the
/// same guarded threshold as [`split_spectrum`].
pub fn chiral_invariant(
    h: &SingleParticleHamiltonian,
    g: &GammaInvolution,
    tol: Real,
) -> Result<i64> {
    let anticommutator = check_chiral(g, h)?;
    let scale = h.matrix().iter().map(|v| v.norm()).fold(1.0, Real::max);
    if anticommutator > TOL_SPECTRAL * scale {
        return Err(PhsymError::SelfCheckFailed {
            check: "Γ anticommutes with h".to_string(),
            residual: anticommutator,
            tolerance: TOL_SPECTRAL * scale,
        });
    }
    let split = split_spectrum(h, tol)?;
    let mut invariant = 0i64;
    for v in gamma_signs_on_zero_modes(&split, g)? {
        invariant += if v > 0.0 { 1 } else { -1 };
    }
    Ok(invariant)
}

/// Γ-weight of the zero-mode space inside a region of orbitals:
/// tr(V₀† P Γ P V₀) with P the projector onto the orbitals where `region`
/// is true.
///
/// A finite open chain always carries zero modes at both ends, whose
/// Γ-eigenvalues cancel in the global invariant. When the zero modes
/// localize sharply (maximal staggering), restricting to the orbitals near
/// one end recovers the invariant of the corresponding semi-infinite
/// system; the trace is basis-independent on the zero-mode space, so
/// degenerate eigenvector mixing does not disturb it.
pub fn edge_zero_mode_imbalance(
    split: &SpectralSplit,
    g: &GammaInvolution,
    region: &[bool],
) -> Result<Real> {
    let dim = g.dim();
    if split.zero().nrows() != dim || region.len() != dim {
        return Err(PhsymError::DimensionMismatch {
            context: "edge-restricted zero-mode imbalance".to_string(),
            expected: dim,
            found: region.len(),
        });
    }
    let mut projected = split.zero().clone();
    for (orbital, &keep) in region.iter().enumerate() {
        if !keep {
            for col in 0..projected.ncols() {
                projected[(orbital, col)] = Scalar::new(0.0, 0.0);
            }
        }
    }
    let weight = projected.adjoint() * g.matrix() * &projected;
    Ok(weight.trace().re)
}
