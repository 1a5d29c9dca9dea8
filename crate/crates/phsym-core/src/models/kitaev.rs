//! The spinless pairing chain H = (t/2) Σ_x (a_{x+1} − a†_{x+1})(a_x + a†_x)
//! in mean-field block form, with residual checks for its quasi-particle
//! operators.

use crate::error::{PhsymError, Result};
use crate::fock::{
    conjugate_by_antilinear, realize_expression, second_quantize_bdg, BdgHamiltonian, FockSpace,
    ManyBodyOperator, OpSymbol, OperatorExpression,
};
use crate::linalg::CsrMatrix;
use crate::models::spec::Boundary;
use crate::models::stagger::staggered_k;
use crate::{CMat, Real, Scalar};
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::Arc;

/// Expands the pairing chain into hopping and pairing blocks: each bond
/// (x, x+1) contributes h_{x+1,x} = h_{x,x+1} = −t/2 and the skew pair
/// Δ_{x,x+1} = +t/2, Δ_{x+1,x} = −t/2.
pub fn kitaev_chain(length: usize, hopping: Real, boundary: Boundary) -> Result<BdgHamiltonian> {
    if length < 2 {
        return Err(PhsymError::invalid(format!(
            "pairing chain needs at least 2 sites, got {length}"
        )));
    }
    let mut h = CMat::zeros(length, length);
    let mut delta = CMat::zeros(length, length);
    let bonds = match boundary {
        Boundary::Open => length - 1,
        Boundary::Periodic => length,
    };
    let half = 0.5 * hopping;
    for x in 0..bonds {
        let to = (x + 1) % length;
        h[(to, x)] += Scalar::new(-half, 0.0);
        h[(x, to)] += Scalar::new(-half, 0.0);
        delta[(x, to)] += Scalar::new(half, 0.0);
        delta[(to, x)] += Scalar::new(-half, 0.0);
    }
    BdgHamiltonian::new(h, delta)
}

/// Residuals certifying one quasi-particle operator of the periodic pairing
/// chain at momentum k = 2πm/L.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QuasiparticleCheck {
    /// Grid index m of the momentum.
    pub momentum_index: usize,
    /// Momentum k = 2πm/L.
    pub momentum: Real,
    /// ‖[H, α_k] + t·α_k‖_max — the operator lowers the energy by exactly t.
    pub commutator_residual: Real,
    /// Distance of K α_k K⁻¹ from the line C·α_{π−k}, relative to the
    /// operator's own scale.
    pub line_residual: Real,
}

/// The quasi-particle operator α_k = Σ_x e^{ikx}·(i sin(k/2)·a_x +
/// cos(k/2)·a†_x) realized on the full Fock space.
fn quasiparticle_operator(
    space: &Arc<FockSpace>,
    length: usize,
    momentum_index: usize,
) -> Result<ManyBodyOperator> {
    let k = 2.0 * PI * momentum_index as Real / length as Real;
    let mut expr = OperatorExpression::new(length)?;
    for x in 0..length {
        let phase = Scalar::new(0.0, k * x as Real).exp();
        expr.add_term(
            phase * Scalar::new(0.0, (k / 2.0).sin()),
            vec![OpSymbol::Annihilate(x)],
        )?;
        expr.add_term(
            phase * Scalar::new((k / 2.0).cos(), 0.0),
            vec![OpSymbol::Create(x)],
        )?;
    }
    realize_expression(&expr, space)
}

/// Frobenius distance of `a` from the complex line spanned by `b`,
/// normalized by ‖a‖.
fn line_distance(a: &CsrMatrix, b: &CsrMatrix) -> Real {
    let overlap: Scalar = a
        .iter()
        .map(|(r, c, v)| b.get(r, c).conj() * v)
        .sum();
    let b_norm_sqr: Real = b.iter().map(|(_, _, v)| v.norm_sqr()).sum();
    let a_norm_sqr: Real = a.iter().map(|(_, _, v)| v.norm_sqr()).sum();
    if a_norm_sqr == 0.0 {
        return 0.0;
    }
    let projection = overlap / Scalar::new(b_norm_sqr, 0.0);
    let residual = a
        .add_scaled(&b.scaled(projection), Scalar::new(-1.0, 0.0))
        .expect("matching shapes");
    let residual_norm_sqr: Real = residual.iter().map(|(_, _, v)| v.norm_sqr()).sum();
    (residual_norm_sqr / a_norm_sqr).sqrt()
}

/// Checks, for each requested grid momentum, that the quasi-particle
/// operator lowers the energy by t and that the staggered transformation
/// maps its line to the line at π − k (also on the grid for even L).
pub fn kitaev_quasiparticle_check(
    length: usize,
    hopping: Real,
    momentum_indices: &[usize],
) -> Result<Vec<QuasiparticleCheck>> {
    if length < 2 || length % 2 != 0 {
        return Err(PhsymError::invalid(format!(
            "the momentum grid pairing k ↔ π−k needs an even periodic chain, got length {length}"
        )));
    }
    for &m in momentum_indices {
        if m >= length {
            return Err(PhsymError::invalid(format!(
                "momentum index {m} is off the {length}-point grid"
            )));
        }
    }
    let space = FockSpace::full(length)?;
    let bdg = kitaev_chain(length, hopping, Boundary::Periodic)?;
    let h = second_quantize_bdg(&bdg, &space)?;
    let sites: Vec<usize> = (0..length).collect();
    let k_map = staggered_k(&space, &sites)?;

    let mut checks = Vec::with_capacity(momentum_indices.len());
    for &m in momentum_indices {
        let alpha = quasiparticle_operator(&space, length, m)?;
        let commutator = h.commutator(&alpha)?;
        let commutator_residual = commutator
            .add_scaled(&alpha, Scalar::new(hopping, 0.0))?
            .max_abs();

        // π − k on the grid: m ↦ (L/2 − m) mod L.
        let partner = (length + length / 2 - m) % length;
        let image = conjugate_by_antilinear(&k_map, &alpha)?;
        let target = quasiparticle_operator(&space, length, partner)?;
        let line_residual = line_distance(image.matrix(), target.matrix());

        checks.push(QuasiparticleCheck {
            momentum_index: m,
            momentum: 2.0 * PI * m as Real / length as Real,
            commutator_residual,
            line_residual,
        });
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigvalsh;
    use crate::phc::check_symmetry;

    #[test]
    fn open_two_site_chain_matches_the_hand_expansion() {
        // (t/2)(a₁ − a†₁)(a₀ + a†₀), expanded term by term.
        let t = 0.8;
        let space = FockSpace::full(2).unwrap();
        let mut left = OperatorExpression::new(2).unwrap();
        left.add_term(Scalar::new(1.0, 0.0), vec![OpSymbol::Annihilate(1)])
            .unwrap();
        left.add_term(Scalar::new(-1.0, 0.0), vec![OpSymbol::Create(1)])
            .unwrap();
        let mut right = OperatorExpression::new(2).unwrap();
        right
            .add_term(Scalar::new(1.0, 0.0), vec![OpSymbol::Annihilate(0)])
            .unwrap();
        right
            .add_term(Scalar::new(1.0, 0.0), vec![OpSymbol::Create(0)])
            .unwrap();
        let product = left.multiply(&right).unwrap().scaled(Scalar::new(t / 2.0, 0.0));
        let expanded = realize_expression(&product, &space).unwrap();

        let block = kitaev_chain(2, t, Boundary::Open).unwrap();
        let quantized = second_quantize_bdg(&block, &space).unwrap();
        let diff = quantized
            .add_scaled(&expanded, Scalar::new(-1.0, 0.0))
            .unwrap();
        assert!(diff.max_abs() < 1e-14);
    }

    #[test]
    fn periodic_ring_has_uniform_quasiparticle_spacing() {
        let (length, t) = (6, 1.0);
        let space = FockSpace::full(length).unwrap();
        let block = kitaev_chain(length, t, Boundary::Periodic).unwrap();
        let h = second_quantize_bdg(&block, &space).unwrap();
        let spectrum = eigvalsh(&h.to_dense()).unwrap();
        let ground = spectrum[0];
        assert!((ground + 3.0 * t).abs() < 1e-10);
        let mut multiplicities = vec![0usize; length + 1];
        for energy in &spectrum {
            let steps = (energy - ground) / t;
            let level = steps.round() as usize;
            assert!((steps - level as Real).abs() < 1e-10, "spectrum {spectrum:?}");
            multiplicities[level] += 1;
        }
        assert_eq!(multiplicities, vec![1, 6, 15, 20, 15, 6, 1]);
    }

    #[test]
    fn staggered_transformation_is_a_symmetry() {
        for (length, boundary) in [(6, Boundary::Periodic), (4, Boundary::Open)] {
            let space = FockSpace::full(length).unwrap();
            let block = kitaev_chain(length, 1.0, boundary).unwrap();
            let h = second_quantize_bdg(&block, &space).unwrap();
            let sites: Vec<usize> = (0..length).collect();
            let k = staggered_k(&space, &sites).unwrap();
            assert!(check_symmetry(&k, &h).unwrap() < 1e-12);
        }
    }

    #[test]
    fn quasiparticles_lower_the_energy_and_pair_momenta_across_pi() {
        let length = 6;
        let all: Vec<usize> = (0..length).collect();
        let checks = kitaev_quasiparticle_check(length, 1.0, &all).unwrap();
        assert_eq!(checks.len(), length);
        for check in &checks {
            assert!(
                check.commutator_residual < 1e-12,
                "m = {}: {}",
                check.momentum_index,
                check.commutator_residual
            );
            assert!(
                check.line_residual < 1e-10,
                "m = {}: {}",
                check.momentum_index,
                check.line_residual
            );
        }
    }

    #[test]
    fn zero_momentum_operator_is_pure_creation_and_still_lowers() {
        let length = 6;
        let space = FockSpace::full(length).unwrap();
        let alpha = quasiparticle_operator(&space, length, 0).unwrap();
        // At k = 0 the annihilation component vanishes: α₀ = Σ_x a†_x maps
        // each sector upward only.
        for (row, col, _) in alpha.matrix().iter() {
            let gained = space.state(row).count_ones() as i64 - space.state(col).count_ones() as i64;
            assert_eq!(gained, 1);
        }
        let checks = kitaev_quasiparticle_check(length, 1.0, &[0]).unwrap();
        assert!(checks[0].commutator_residual < 1e-12);
    }

    #[test]
    fn off_grid_momenta_are_rejected() {
        assert!(kitaev_quasiparticle_check(6, 1.0, &[6]).is_err());
        assert!(kitaev_quasiparticle_check(5, 1.0, &[0]).is_err());
    }
}
