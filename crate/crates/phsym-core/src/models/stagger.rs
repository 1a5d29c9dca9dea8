//! The staggered particle-hole transformation shared by every lattice model:
//! K = Ξ ∘ ⋀(Γ) with Γ = diag((−1)^{x(orbital)}).

use crate::error::{PhsymError, Result};
use crate::fock::{
    annihilation_matrix, conjugate_by_antilinear, creation_matrix, AntilinearMap, FockSpace,
};
use crate::phc::{make_k, GammaInvolution};
use crate::{Real, Scalar, TOL_CONSTRUCTION};
use std::sync::Arc;

/// Builds the staggered transformation for a layout that assigns a site x
/// (and hence a parity (−1)^x) to every orbital; spin and chain indices
/// inherit the parity of their site.
///
/// The construction is verified before returning: the defining relation
/// K a_j K⁻¹ = (−1)^{x_j} a†_j is checked on every orbital.
pub fn staggered_k(
    space: &Arc<FockSpace>,
    site_of_orbital: &[usize],
) -> Result<AntilinearMap> {
    if site_of_orbital.len() != space.num_orbitals() {
        return Err(PhsymError::DimensionMismatch {
            context: "staggered transformation layout".to_string(),
            expected: space.num_orbitals(),
            found: site_of_orbital.len(),
        });
    }
    let signs: Vec<Real> = site_of_orbital
        .iter()
        .map(|&x| if x % 2 == 0 { 1.0 } else { -1.0 })
        .collect();
    let gamma = GammaInvolution::from_signs(&signs)?;
    let k = make_k(&gamma, space)?;
    for (orbital, &sign) in signs.iter().enumerate() {
        let conjugated =
            conjugate_by_antilinear(&k, &annihilation_matrix(space, orbital)?)?;
        let expected = creation_matrix(space, orbital)?.scaled(Scalar::new(sign, 0.0));
        let residual = conjugated
            .add_scaled(&expected, Scalar::new(-1.0, 0.0))?
            .max_abs();
        if residual > TOL_CONSTRUCTION {
            return Err(PhsymError::SelfCheckFailed {
                check: format!("staggered ladder action on orbital {orbital}"),
                residual,
                tolerance: TOL_CONSTRUCTION,
            });
        }
    }
    Ok(k)
}
