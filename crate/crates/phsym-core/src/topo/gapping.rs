//! Pairwise gapping of symmetry-protected zero modes.
//!
//! A particle-hole-even mode (Kα₊K⁻¹ = +α₊†) and a particle-hole-odd one
//! (Kα₋K⁻¹ = −α₋†) admit the symmetric coupling W = α₊†α₋ + α₋†α₊. The
//! coupling splits the degenerate pair into a particle-like mode
//! β_p = α₊ + α₋ and a hole-like mode β_h = α₊† − α₋† of equal energy,
//! exchanged by the antiunitary symmetry.

use crate::error::{PhsymError, Result};
use crate::fock::{
    conjugate_by_antilinear, symmetry_residual, AntilinearMap, ManyBodyOperator, Space,
};
use crate::linalg::{eigvalsh, CsrMatrix};
use crate::{Real, Scalar, TOL_SPECTRAL};
use serde::Serialize;

/// Verification report for the pairwise gapping of two zero modes.
#[derive(Clone, Debug, Serialize)]
pub struct PairGapping {
    /// Full spectrum of the coupling W = α₊†α₋ + α₋†α₊, ascending.
    pub spectrum: Vec<Real>,
    /// ‖K W K⁻¹ − W‖: the coupling must respect the symmetry.
    pub symmetry_residual: Real,
    /// ‖W − ([β_p†,β_p] + [β_h†,β_h])/4‖: the commutator form of the
    /// coupling, exact for canonically anticommuting modes.
    pub commutator_identity_residual: Real,
    /// Excitation energy of the particle-like mode ([W, β_p] = −E β_p).
    pub particle_energy: Real,
    /// Excitation energy of the hole-like mode ([W, β_h] = −E β_h).
    pub hole_energy: Real,
    /// Distance of [W, β_p] from the line spanned by β_p, relative to its
    /// magnitude.
    pub particle_line_residual: Real,
    /// Same for β_h.
    pub hole_line_residual: Real,
    /// ‖K β_p K⁻¹ − β_h‖: the symmetry exchanges the two modes.
    pub conjugate_mode_residual: Real,
}

/// Least-squares coefficient of `target ≈ c · direction` in the Frobenius
/// inner product, with the relative residual of the fit.
fn frobenius_fit(target: &CsrMatrix, direction: &CsrMatrix) -> Result<(Scalar, Real)> {
    let overlap: Scalar = target
        .iter()
        .map(|(r, c, v)| direction.get(r, c).conj() * v)
        .sum();
    let direction_norm_sqr: Real = direction.iter().map(|(_, _, v)| v.norm_sqr()).sum();
    let target_norm_sqr: Real = target.iter().map(|(_, _, v)| v.norm_sqr()).sum();
    if direction_norm_sqr == 0.0 || target_norm_sqr == 0.0 {
        return Err(PhsymError::invalid(
            "mode fit needs nonzero operators".to_string(),
        ));
    }
    let coefficient = overlap / Scalar::new(direction_norm_sqr, 0.0);
    let residual = target.add_scaled(&direction.scaled(coefficient), Scalar::new(-1.0, 0.0))?;
    let residual_norm_sqr: Real = residual.iter().map(|(_, _, v)| v.norm_sqr()).sum();
    Ok((coefficient, (residual_norm_sqr / target_norm_sqr).sqrt()))
}

/// Commutator [a, b] on matching spaces.
fn commutator(a: &ManyBodyOperator, b: &ManyBodyOperator) -> Result<ManyBodyOperator> {
    a.compose(b)?.add_scaled(&b.compose(a)?, Scalar::new(-1.0, 0.0))
}

/// Fits [w, beta] = −E·beta and returns (E, relative line residual).
fn mode_energy(w: &ManyBodyOperator, beta: &ManyBodyOperator) -> Result<(Real, Real)> {
    let moved = commutator(w, beta)?;
    let (coefficient, line_residual) = frobenius_fit(moved.matrix(), beta.matrix())?;
    Ok((-coefficient.re, line_residual))
}

/// Couples a particle-hole-even zero mode α₊ with a particle-hole-odd one
/// α₋ through the symmetric perturbation W = α₊†α₋ + α₋†α₊ and verifies
/// that the pair gaps out as one particle-like and one hole-like mode.
///
/// Both parity conditions are checked up front (Kα₊K⁻¹ = +α₊† and
/// Kα₋K⁻¹ = −α₋†); the returned report then records the K-symmetry of W,
/// the commutator form of the coupling, the equal mode energies with
/// their line residuals, and the exchange K β_p K⁻¹ = β_h. Every recorded
/// residual is also enforced, so a returned report is a passed check.
pub fn zero_mode_pair_gapping(
    alpha_plus: &ManyBodyOperator,
    alpha_minus: &ManyBodyOperator,
    k: &AntilinearMap,
) -> Result<PairGapping> {
    if !Space::same(alpha_plus.domain(), alpha_plus.codomain())
        || !Space::same(alpha_plus.domain(), alpha_minus.domain())
        || !Space::same(alpha_minus.domain(), alpha_minus.codomain())
        || !Space::same(alpha_plus.domain(), k.domain())
    {
        return Err(PhsymError::SpaceMismatch("zero-mode pair gapping".into()));
    }
    let scale = alpha_plus.max_abs().max(alpha_minus.max_abs()).max(1.0);
    let tolerance = TOL_SPECTRAL * scale;

    // Parity preconditions: even mode conjugates to +its adjoint, odd mode
    // to −its adjoint.
    let even_residual = conjugate_by_antilinear(k, alpha_plus)?
        .add_scaled(&alpha_plus.dagger(), Scalar::new(-1.0, 0.0))?
        .max_abs();
    if even_residual > tolerance {
        return Err(PhsymError::SelfCheckFailed {
            check: "coupled mode α₊ is particle-hole even".to_string(),
            residual: even_residual,
            tolerance,
        });
    }
    let odd_residual = conjugate_by_antilinear(k, alpha_minus)?
        .add_scaled(&alpha_minus.dagger(), Scalar::new(1.0, 0.0))?
        .max_abs();
    if odd_residual > tolerance {
        return Err(PhsymError::SelfCheckFailed {
            check: "coupled mode α₋ is particle-hole odd".to_string(),
            residual: odd_residual,
            tolerance,
        });
    }

    let w = alpha_plus
        .dagger()
        .compose(alpha_minus)?
        .add_scaled(&alpha_minus.dagger().compose(alpha_plus)?, Scalar::new(1.0, 0.0))?;
    let w_scale = w.max_abs().max(1.0);

    let symmetry = symmetry_residual(k, &w, 1.0)?;
    if symmetry > TOL_SPECTRAL * w_scale {
        return Err(PhsymError::SelfCheckFailed {
            check: "pair coupling commutes with the symmetry".to_string(),
            residual: symmetry,
            tolerance: TOL_SPECTRAL * w_scale,
        });
    }

    let beta_p = alpha_plus.add_scaled(alpha_minus, Scalar::new(1.0, 0.0))?;
    let beta_h = alpha_plus
        .dagger()
        .add_scaled(&alpha_minus.dagger(), Scalar::new(-1.0, 0.0))?;

    // W = ([β_p†, β_p] + [β_h†, β_h]) / 4 for canonical modes.
    let quarter = commutator(&beta_p.dagger(), &beta_p)?
        .add_scaled(&commutator(&beta_h.dagger(), &beta_h)?, Scalar::new(1.0, 0.0))?
        .scaled(Scalar::new(0.25, 0.0));
    let identity_residual = w.add_scaled(&quarter, Scalar::new(-1.0, 0.0))?.max_abs();
    if identity_residual > TOL_SPECTRAL * w_scale {
        return Err(PhsymError::SelfCheckFailed {
            check: "coupling equals its commutator form (canonical modes)".to_string(),
            residual: identity_residual,
            tolerance: TOL_SPECTRAL * w_scale,
        });
    }

    let (particle_energy, particle_line_residual) = mode_energy(&w, &beta_p)?;
    let (hole_energy, hole_line_residual) = mode_energy(&w, &beta_h)?;
    for (name, residual) in [
        ("particle-like mode spans a commutator eigenline", particle_line_residual),
        ("hole-like mode spans a commutator eigenline", hole_line_residual),
    ] {
        if residual > TOL_SPECTRAL {
            return Err(PhsymError::SelfCheckFailed {
                check: name.to_string(),
                residual,
                tolerance: TOL_SPECTRAL,
            });
        }
    }
    let energy_gap = (particle_energy - hole_energy).abs();
    if energy_gap > TOL_SPECTRAL * w_scale {
        return Err(PhsymError::SelfCheckFailed {
            check: "particle-like and hole-like modes have equal energies".to_string(),
            residual: energy_gap,
            tolerance: TOL_SPECTRAL * w_scale,
        });
    }

    let conjugate_mode_residual = conjugate_by_antilinear(k, &beta_p)?
        .add_scaled(&beta_h, Scalar::new(-1.0, 0.0))?
        .max_abs();
    if conjugate_mode_residual > tolerance {
        return Err(PhsymError::SelfCheckFailed {
            check: "symmetry exchanges the particle-like and hole-like modes".to_string(),
            residual: conjugate_mode_residual,
            tolerance,
        });
    }

    let spectrum = eigvalsh(&w.to_dense())?;
    Ok(PairGapping {
        spectrum,
        symmetry_residual: symmetry,
        commutator_identity_residual: identity_residual,
        particle_energy,
        hole_energy,
        particle_line_residual,
        hole_line_residual,
        conjugate_mode_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{annihilation_matrix, FockSpace};
    use crate::models::staggered_k;
    use crate::CMat;

    #[test]
    fn two_orbital_toy_gaps_the_pair_symmetrically() {
        // Independent oracle: the coupling a†₀a₁ + a†₁a₀ on the basis
        // {|00⟩, |01⟩, |10⟩, |11⟩} is the matrix with a single symmetric
        // 1 between the two singly-occupied states.
        let mut dense = CMat::zeros(4, 4);
        dense[(1, 2)] = Scalar::new(1.0, 0.0);
        dense[(2, 1)] = Scalar::new(1.0, 0.0);
        let oracle = eigvalsh(&dense).unwrap();
        assert_eq!(oracle.len(), 4);
        for (value, expected) in oracle.iter().zip([-1.0, 0.0, 0.0, 1.0]) {
            assert!((value - expected).abs() < 1e-14);
        }

        let space = FockSpace::full(2).unwrap();
        let k = staggered_k(&space, &[0, 1]).unwrap();
        let even = annihilation_matrix(&space, 0).unwrap();
        let odd = annihilation_matrix(&space, 1).unwrap();
        let report = zero_mode_pair_gapping(&even, &odd, &k).unwrap();

        for (value, expected) in report.spectrum.iter().zip(&oracle) {
            assert!((value - expected).abs() < 1e-12);
        }
        // Half filling: the singly-occupied block carries the split ±1 pair.
        let w_dense = {
            let w01 = even.dagger().compose(&odd).unwrap();
            let w10 = odd.dagger().compose(&even).unwrap();
            w01.add_scaled(&w10, Scalar::new(1.0, 0.0)).unwrap().to_dense()
        };
        let half_block = CMat::from_fn(2, 2, |r, c| w_dense[(r + 1, c + 1)]);
        let half_filling = eigvalsh(&half_block).unwrap();
        assert!((half_filling[0] + 1.0).abs() < 1e-12);
        assert!((half_filling[1] - 1.0).abs() < 1e-12);

        assert!((report.particle_energy - 1.0).abs() < 1e-12);
        assert!((report.hole_energy - 1.0).abs() < 1e-12);
        assert!(report.symmetry_residual < 1e-12);
        assert!(report.commutator_identity_residual < 1e-12);
        assert!(report.particle_line_residual < 1e-12);
        assert!(report.hole_line_residual < 1e-12);
        assert!(report.conjugate_mode_residual < 1e-12);
    }

    #[test]
    fn swapped_parities_are_rejected() {
        let space = FockSpace::full(2).unwrap();
        let k = staggered_k(&space, &[0, 1]).unwrap();
        let even = annihilation_matrix(&space, 0).unwrap();
        let odd = annihilation_matrix(&space, 1).unwrap();
        // The odd mode in the even slot fails the first parity check.
        let err = zero_mode_pair_gapping(&odd, &even, &k).unwrap_err();
        assert!(matches!(err, PhsymError::SelfCheckFailed { .. }));
    }

    #[test]
    fn non_canonical_modes_are_rejected() {
        // Doubling one mode keeps its parity but skews the coupling, so
        // β_p no longer spans a commutator eigenline.
        let space = FockSpace::full(2).unwrap();
        let k = staggered_k(&space, &[0, 1]).unwrap();
        let even = annihilation_matrix(&space, 0)
            .unwrap()
            .scaled(Scalar::new(2.0, 0.0));
        let odd = annihilation_matrix(&space, 1).unwrap();
        let err = zero_mode_pair_gapping(&even, &odd, &k).unwrap_err();
        assert!(matches!(err, PhsymError::SelfCheckFailed { .. }));
    }
}
