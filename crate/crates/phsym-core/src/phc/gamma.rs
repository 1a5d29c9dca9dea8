//! Single-particle involutions, their multiplicative Fock-space lifts, and
//! assembled particle-hole transformations K = Ξ ∘ ⋀(Γ), together with the
//! residual checks that decide whether a given K (or Γ) is a symmetry.

use crate::error::{PhsymError, Result};
use crate::fock::{
    jw_sign, occupied, occupied_orbitals, symmetry_residual, AntilinearMap, FockSpace,
    FockState, ManyBodyOperator, SingleParticleHamiltonian, Space,
};
use crate::linalg::CsrMatrix;
use crate::phc::xi::xi_fast;
use crate::{CMat, Real, Scalar, TOL_CONSTRUCTION};
use std::collections::HashMap;
use std::sync::Arc;

/// A unitary involution Γ on the single-particle space, validated on
/// construction: Γ² = 1 and Γ†Γ = 1, both within 1e−12.
#[derive(Clone, Debug)]
pub struct GammaInvolution {
    matrix: CMat,
    is_unitary: bool,
    is_involution: bool,
}

impl GammaInvolution {
    /// Validates the involution and unitarity residuals and stores the matrix.
    pub fn new(matrix: CMat) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(PhsymError::DimensionMismatch {
                context: "involution construction".to_string(),
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let eye = CMat::identity(matrix.nrows(), matrix.ncols());
        let involution_residual = max_abs(&(&matrix * &matrix - &eye));
        if involution_residual > TOL_CONSTRUCTION {
            return Err(PhsymError::NotInvolution {
                residual: involution_residual,
                tolerance: TOL_CONSTRUCTION,
            });
        }
        let unitarity_residual = max_abs(&(matrix.adjoint() * &matrix - &eye));
        if unitarity_residual > TOL_CONSTRUCTION {
            return Err(PhsymError::NotUnitary {
                residual: unitarity_residual,
                tolerance: TOL_CONSTRUCTION,
            });
        }
        Ok(GammaInvolution {
            matrix,
            is_unitary: true,
            is_involution: true,
        })
    }

    /// The identity involution on `dim` orbitals.
    pub fn identity(dim: usize) -> Self {
        GammaInvolution {
            matrix: CMat::identity(dim, dim),
            is_unitary: true,
            is_involution: true,
        }
    }

    /// Diagonal involution with the given ±1 entries.
    pub fn from_signs(signs: &[Real]) -> Result<Self> {
        if signs.iter().any(|s| s.abs() != 1.0) {
            return Err(PhsymError::invalid(
                "diagonal involution entries must be ±1".to_string(),
            ));
        }
        let dim = signs.len();
        let matrix = CMat::from_fn(dim, dim, |r, c| {
            if r == c {
                Scalar::new(signs[r], 0.0)
            } else {
                Scalar::new(0.0, 0.0)
            }
        });
        Self::new(matrix)
    }

    /// The validated matrix.
    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// Single-particle dimension.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Whether the unitarity check passed (always true post-construction).
    pub fn is_unitary(&self) -> bool {
        self.is_unitary
    }

    /// Whether the involution check passed (always true post-construction).
    pub fn is_involution(&self) -> bool {
        self.is_involution
    }
}

/// Max-norm of a dense matrix.
fn max_abs(m: &CMat) -> Real {
    m.iter().map(|z| z.norm()).fold(0.0, Real::max)
}

/// Multiplicative lift ⋀(Γ) to the Fock space: the basis state
/// e_{s₁} ∧ … ∧ e_{sₙ} maps to Γe_{s₁} ∧ … ∧ Γe_{sₙ}.
///
/// Each image is built by folding creation factors Σ_i Γ_{is} a†_i over the
/// vacuum, highest occupied orbital first so the ascending product order is
/// preserved. The lift conserves particle number, so it restricts to
/// sector-fixed spaces as well as the full space.
pub fn lift_gamma(g: &GammaInvolution, space: &Arc<FockSpace>) -> Result<ManyBodyOperator> {
    if g.dim() != space.num_orbitals() {
        return Err(PhsymError::DimensionMismatch {
            context: "involution lift".to_string(),
            expected: space.num_orbitals(),
            found: g.dim(),
        });
    }
    let mut triplets: Vec<(u32, u32, Scalar)> = Vec::with_capacity(space.dim());
    for (col, &state) in space.basis().iter().enumerate() {
        let mut amplitudes: HashMap<FockState, Scalar> = HashMap::new();
        amplitudes.insert(0, Scalar::new(1.0, 0.0));
        for s in occupied_orbitals(state).into_iter().rev() {
            let mut next: HashMap<FockState, Scalar> =
                HashMap::with_capacity(amplitudes.len() * 2);
            for i in 0..g.dim() {
                let coeff = g.matrix[(i, s)];
                if coeff.norm_sqr() == 0.0 {
                    continue;
                }
                for (&pattern, &amplitude) in &amplitudes {
                    if occupied(pattern, i) {
                        continue;
                    }
                    let sign = jw_sign(pattern, i);
                    *next.entry(pattern | (1 << i)).or_insert(Scalar::new(0.0, 0.0)) +=
                        coeff * amplitude * sign;
                }
            }
            amplitudes = next;
        }
        for (pattern, amplitude) in amplitudes {
            let row = space
                .index_of(pattern)
                .expect("the lift conserves particle number");
            triplets.push((row as u32, col as u32, amplitude));
        }
    }
    let matrix = CsrMatrix::from_triplets(space.dim(), space.dim(), triplets)?;
    ManyBodyOperator::new(
        Space::Fock(space.clone()),
        Space::Fock(space.clone()),
        matrix,
    )
}

/// Assembles the particle-hole transformation K = Ξ ∘ ⋀(Γ) on the full Fock
/// space. K maps the n-particle sector to the (N−n)-particle sector; a
/// sector-fixed block is recovered afterwards via [`AntilinearMap::restrict`].
pub fn make_k(g: &GammaInvolution, space: &Arc<FockSpace>) -> Result<AntilinearMap> {
    if space.sector_number().is_some() {
        return Err(PhsymError::invalid(
            "particle-hole transformations are assembled on the full Fock space".to_string(),
        ));
    }
    if g.dim() != space.num_orbitals() {
        return Err(PhsymError::DimensionMismatch {
            context: "particle-hole transformation".to_string(),
            expected: space.num_orbitals(),
            found: g.dim(),
        });
    }
    let xi = xi_fast(space.num_orbitals())?;
    let lifted = lift_gamma(g, space)?;
    xi.compose_linear_first(&lifted)
}

/// Residual of the antiunitary symmetry condition, ‖K H K⁻¹ − H‖_max.
pub fn check_symmetry(k: &AntilinearMap, h: &ManyBodyOperator) -> Result<Real> {
    symmetry_residual(k, h, 1.0)
}

/// Residual of the single-particle anticommutation, ‖Γh + hΓ‖_max.
///
/// Vanishing here is equivalent to K-invariance of the commutator-ordered
/// quantization of `h` under K = Ξ ∘ ⋀(Γ); the joint statement is exercised
/// by the integration suite.
pub fn check_chiral(g: &GammaInvolution, h: &SingleParticleHamiltonian) -> Result<Real> {
    if g.dim() != h.dim() {
        return Err(PhsymError::DimensionMismatch {
            context: "chiral residual".to_string(),
            expected: g.dim(),
            found: h.dim(),
        });
    }
    Ok(max_abs(
        &(g.matrix() * h.matrix() + h.matrix() * g.matrix()),
    ))
}
