//! Single-particle structure of the lowest Landau level at finite flux.
//!
//! The level at `flux` quanta is spanned by the analytic orbitals `z^l`,
//! `l = 0..flux`, with the rotation-invariant Gaussian inner product
//! `⟨z^a, z^b⟩ = δ_ab·ν_a` where `ν_l = ∫₀^∞ r^{2l+1} e^{−r²/2} dr = 2^l·l!`.
//! Every many-body construction in this module family works in the
//! orthonormalized basis `φ_l = z^l/√ν_l`, so the measure enters exactly
//! once: through the norm table kept here.

use std::sync::Arc;

use crate::error::{PhsymError, Result};
use crate::fock::FockSpace;
use crate::Real;

/// Largest flux (orbital count) the lowest-Landau-level helpers accept.
///
/// Sector dimensions peak at C(12, 6) = 924, where every operator in this
/// module family stays dense and exact.
pub const MAX_LLL_ORBITALS: usize = 12;

/// Monomial norms `⟨z^l, z^l⟩ = 2^l·l!` for `l = 0..flux`.
///
/// Distinct monomials are orthogonal by rotation invariance, so this table
/// is the entire inner product of the level.
pub fn lll_norms(flux: usize) -> Vec<Real> {
    let mut norms = Vec::with_capacity(flux);
    let mut nu = 1.0;
    for l in 0..flux {
        if l > 0 {
            // ν_l / ν_{l−1} = 2l.
            nu *= 2.0 * l as Real;
        }
        norms.push(nu);
    }
    norms
}

/// A lowest Landau level: `flux` orbitals and their Gaussian norm table.
#[derive(Debug, Clone)]
pub struct LllSpace {
    flux: usize,
    norms: Vec<Real>,
}

impl LllSpace {
    /// Builds the level.  `flux` must lie in `1..=MAX_LLL_ORBITALS`.
    pub fn new(flux: usize) -> Result<Self> {
        if flux == 0 || flux > MAX_LLL_ORBITALS {
            return Err(PhsymError::invalid(format!(
                "lowest Landau level accepts 1..={MAX_LLL_ORBITALS} orbitals, got {flux}"
            )));
        }
        Ok(LllSpace {
            flux,
            norms: lll_norms(flux),
        })
    }

    /// Number of flux quanta, which equals the number of orbitals.
    pub fn flux(&self) -> usize {
        self.flux
    }

    /// Monomial norms `ν_l = 2^l·l!` for `l = 0..flux`.
    pub fn norms(&self) -> &[Real] {
        &self.norms
    }

    /// The `occupied`-particle sector of the level as a Fock space.
    pub fn sector(&self, occupied: usize) -> Result<Arc<FockSpace>> {
        FockSpace::sector(self.flux, occupied)
    }
}

/// Binomial coefficient as a float; exact for every size reachable through
/// the flux window (all intermediates are integers below 2^53).
pub(crate) fn binomial(n: usize, k: usize) -> Real {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut value = 1.0;
    for i in 0..k {
        value = value * (n - i) as Real / (i + 1) as Real;
    }
    value
}
