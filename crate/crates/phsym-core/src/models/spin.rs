//! SU(2) spin chains on tensor-product spaces: spin matrices, site
//! embeddings, the antiferromagnetic Heisenberg Hamiltonian, and total-spin
//! observables.

use crate::error::{PhsymError, Result};
use crate::fock::{ManyBodyOperator, ProductSpace, Space};
use crate::linalg::CsrMatrix;
use crate::models::spec::{Boundary, SpinChainSpec};
use crate::{CMat, Real, Scalar};
use std::sync::Arc;

/// The spin-S matrices (S^x, S^y, S^z) for S = two_s/2, in the basis
/// ordered by descending magnetic quantum number: row j carries m = S − j.
///
/// Built from the ladder action S⁺|S,m⟩ = √(S(S+1) − m(m+1)) |S,m+1⟩ with
/// real non-negative ladder coefficients.
pub fn spin_matrices(two_s: usize) -> Result<[CMat; 3]> {
    if two_s == 0 {
        return Err(PhsymError::invalid(
            "spin matrices need two_s >= 1".to_string(),
        ));
    }
    let dim = two_s + 1;
    let s = two_s as Real / 2.0;
    let mut sz = CMat::zeros(dim, dim);
    let mut raising = CMat::zeros(dim, dim);
    for j in 0..dim {
        let m = s - j as Real;
        sz[(j, j)] = Scalar::new(m, 0.0);
        if j > 0 {
            raising[(j - 1, j)] = Scalar::new((s * (s + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
        }
    }
    let lowering = raising.adjoint();
    let sx = (&raising + &lowering).scale(0.5);
    let sy = (&raising - &lowering) * Scalar::new(0.0, -0.5);
    Ok([sx, sy, sz])
}

/// Embeds a local d×d matrix as an operator acting on one site of the
/// product space (identity everywhere else).
pub fn embed_site_operator(
    space: &Arc<ProductSpace>,
    site: usize,
    local: &CMat,
) -> Result<ManyBodyOperator> {
    let d = space.local_dim();
    if site >= space.sites() {
        return Err(PhsymError::invalid(format!(
            "site {site} outside a {}-site chain",
            space.sites()
        )));
    }
    if local.nrows() != d || local.ncols() != d {
        return Err(PhsymError::DimensionMismatch {
            context: "local site operator".to_string(),
            expected: d,
            found: local.nrows(),
        });
    }
    let dim = space.dim();
    let stride = d.pow(site as u32);
    let mut triplets = Vec::new();
    for col in 0..dim {
        let from_digit = space.digit(col, site);
        for to_digit in 0..d {
            let value = local[(to_digit, from_digit)];
            if value.re == 0.0 && value.im == 0.0 {
                continue;
            }
            let row = col - from_digit * stride + to_digit * stride;
            triplets.push((row as u32, col as u32, value));
        }
    }
    let matrix = CsrMatrix::from_triplets(dim, dim, triplets)?;
    let sp: Space = space.clone().into();
    ManyBodyOperator::new(sp.clone(), sp, matrix)
}

/// The spin component S^axis acting on one site of the chain.
pub fn spin_site_operator(
    space: &Arc<ProductSpace>,
    site: usize,
    axis: usize,
) -> Result<ManyBodyOperator> {
    if axis >= 3 {
        return Err(PhsymError::invalid(format!(
            "spin axis must be 0, 1 or 2, got {axis}"
        )));
    }
    let matrices = spin_matrices(space.local_dim() - 1)?;
    embed_site_operator(space, site, &matrices[axis])
}

/// Total spin component Σ_x S^axis_x.
pub fn total_spin_operator(space: &Arc<ProductSpace>, axis: usize) -> Result<ManyBodyOperator> {
    let sp: Space = space.clone().into();
    let mut total = ManyBodyOperator::zero(sp.clone(), sp);
    let one = Scalar::new(1.0, 0.0);
    for site in 0..space.sites() {
        total = total.add_scaled(&spin_site_operator(space, site, axis)?, one)?;
    }
    Ok(total)
}

/// Total-spin Casimir S²_tot = Σ_i (Σ_x S^i_x)².
pub fn total_spin_squared(space: &Arc<ProductSpace>) -> Result<ManyBodyOperator> {
    let sp: Space = space.clone().into();
    let mut casimir = ManyBodyOperator::zero(sp.clone(), sp);
    let one = Scalar::new(1.0, 0.0);
    for axis in 0..3 {
        let component = total_spin_operator(space, axis)?;
        casimir = casimir.add_scaled(&component.compose(&component)?, one)?;
    }
    Ok(casimir)
}

/// The antiferromagnetic Heisenberg chain
/// H = J Σ_bonds (Σ_i S^i_x S^i_{x+1} − S²), with the constant shift S² per
/// bond placing each fully bound singlet pair at negative energy and each
/// stretched pair at zero.
pub fn heisenberg_spin_chain(spec: &SpinChainSpec) -> Result<ManyBodyOperator> {
    spec.validate()?;
    let space = ProductSpace::new(spec.two_s + 1, spec.length)?;
    let shift = (spec.two_s as Real / 2.0).powi(2);
    let bonds = match spec.boundary {
        Boundary::Open => spec.length - 1,
        Boundary::Periodic => spec.length,
    };
    let sp: Space = space.clone().into();
    let mut h = ManyBodyOperator::zero(sp.clone(), sp);
    let coupling = Scalar::new(spec.coupling, 0.0);
    for x in 0..bonds {
        let to = (x + 1) % spec.length;
        for axis in 0..3 {
            let left = spin_site_operator(&space, x, axis)?;
            let right = spin_site_operator(&space, to, axis)?;
            h = h.add_scaled(&left.compose(&right)?, coupling)?;
        }
        let identity = ManyBodyOperator::identity(space.clone().into());
        h = h.add_scaled(&identity, -coupling * shift)?;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigvalsh;

    fn commutation_residual(m: &[CMat; 3]) -> Real {
        // ‖[S^x, S^y] − i S^z‖ and cyclic.
        let mut worst: Real = 0.0;
        for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let comm = &m[a] * &m[b] - &m[b] * &m[a];
            let diff = comm - m[c].clone() * Scalar::new(0.0, 1.0);
            worst = worst.max(diff.iter().map(|v| v.norm()).fold(0.0, Real::max));
        }
        worst
    }

    #[test]
    fn doublet_and_triplet_matrices_satisfy_the_algebra() {
        for two_s in 1..=4 {
            let m = spin_matrices(two_s).unwrap();
            assert!(commutation_residual(&m) < 1e-14);
            // Casimir Σ (S^i)² = S(S+1)·1.
            let s = two_s as Real / 2.0;
            let casimir = &m[0] * &m[0] + &m[1] * &m[1] + &m[2] * &m[2];
            for j in 0..=two_s {
                assert!((casimir[(j, j)].re - s * (s + 1.0)).abs() < 1e-13);
            }
        }
        assert!(spin_matrices(0).is_err());
    }

    #[test]
    fn triplet_matrices_have_the_expected_entries() {
        let [_, _, sz] = spin_matrices(2).unwrap();
        assert_eq!(sz[(0, 0)].re, 1.0);
        assert_eq!(sz[(1, 1)].re, 0.0);
        assert_eq!(sz[(2, 2)].re, -1.0);
        let [sx, _, _] = spin_matrices(2).unwrap();
        // S^x = (S⁺ + S⁻)/2 with ladder coefficient √2.
        let expect = (2.0f64).sqrt() / 2.0;
        assert!((sx[(0, 1)].re - expect).abs() < 1e-15);
        assert!((sx[(1, 0)].re - expect).abs() < 1e-15);
        assert_eq!(sx[(0, 2)].re, 0.0);
    }

    #[test]
    fn doublet_bond_spectrum_is_singlet_below_triplet() {
        let spec = SpinChainSpec {
            length: 2,
            coupling: 1.0,
            two_s: 1,
            boundary: Boundary::Open,
        };
        let h = heisenberg_spin_chain(&spec).unwrap();
        let spectrum = eigvalsh(&h.to_dense()).unwrap();
        let expected = [-1.0, 0.0, 0.0, 0.0];
        for (got, want) in spectrum.iter().zip(expected) {
            assert!((got - want).abs() < 1e-13, "spectrum {spectrum:?}");
        }
    }

    #[test]
    fn triplet_bond_spectrum_resolves_total_spin_0_1_2() {
        let spec = SpinChainSpec {
            length: 2,
            coupling: 1.0,
            two_s: 2,
            boundary: Boundary::Open,
        };
        let h = heisenberg_spin_chain(&spec).unwrap();
        let spectrum = eigvalsh(&h.to_dense()).unwrap();
        // S·S = ½(S_tot(S_tot+1) − 4) and a shift of −1 per bond:
        // J = 0 → −3, J = 1 → −2 (×3), J = 2 → 0 (×5).
        let expected = [-3.0, -2.0, -2.0, -2.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        for (got, want) in spectrum.iter().zip(expected) {
            assert!((got - want).abs() < 1e-13, "spectrum {spectrum:?}");
        }
    }

    #[test]
    fn chain_commutes_with_total_spin_and_casimir() {
        let spec = SpinChainSpec {
            length: 3,
            coupling: 0.7,
            two_s: 2,
            boundary: Boundary::Periodic,
        };
        let h = heisenberg_spin_chain(&spec).unwrap();
        let space = ProductSpace::new(3, 3).unwrap();
        let sz = total_spin_operator(&space, 2).unwrap();
        let casimir = total_spin_squared(&space).unwrap();
        assert!(h.commutator(&sz).unwrap().max_abs() < 1e-13);
        assert!(h.commutator(&casimir).unwrap().max_abs() < 1e-13);
    }

    #[test]
    fn casimir_on_one_site_is_the_spin_length() {
        let space = ProductSpace::new(4, 1).unwrap();
        let casimir = total_spin_squared(&space).unwrap();
        let dense = casimir.to_dense();
        // S = 3/2: S(S+1) = 15/4 on every basis state.
        for j in 0..4 {
            assert!((dense[(j, j)].re - 3.75).abs() < 1e-14);
        }
        assert!(casimir.add_scaled(
            &ManyBodyOperator::identity(space.clone().into()),
            Scalar::new(-3.75, 0.0)
        )
        .unwrap()
        .max_abs()
            < 1e-14);
    }

    #[test]
    fn embeddings_respect_site_and_shape_bounds() {
        let space = ProductSpace::new(2, 3).unwrap();
        assert!(spin_site_operator(&space, 3, 0).is_err());
        assert!(spin_site_operator(&space, 0, 3).is_err());
        let wrong = CMat::zeros(3, 3);
        assert!(embed_site_operator(&space, 0, &wrong).is_err());
    }

    #[test]
    fn site_embedding_acts_on_the_correct_digit() {
        // local_dim 2, 2 sites: site 1 has stride 2.
        let space = ProductSpace::new(2, 2).unwrap();
        let sz = spin_site_operator(&space, 1, 2).unwrap();
        let dense = sz.to_dense();
        // Basis index = digit0 + 2·digit1; digit j carries m = ½ − j.
        for idx in 0..4 {
            let expected = 0.5 - space.digit(idx, 1) as Real;
            assert!((dense[(idx, idx)].re - expected).abs() < 1e-15);
        }
    }
}
