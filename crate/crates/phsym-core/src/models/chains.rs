//! Free-fermion chain builders: the staggered-hopping (dimerizing) chain and
//! the uniform cosine-band ring, each paired with its sublattice involution.

use crate::error::{PhsymError, Result};
use crate::fock::SingleParticleHamiltonian;
use crate::models::spec::{Boundary, ChainSpec};
use crate::phc::GammaInvolution;
use crate::{CMat, Real, Scalar};

/// Sublattice signs (−1)^x for a chain of `length` sites.
fn sublattice_signs(length: usize) -> Vec<Real> {
    (0..length)
        .map(|x| if x % 2 == 0 { 1.0 } else { -1.0 })
        .collect()
}

/// Staggered-hopping chain: bond x carries −t·(1 + (−1)^{x+1}·δ), so the
/// weak bond comes first and maximal staggering (δ = 1) leaves the site
/// x = 0 dangling on open chains. Returns the hopping matrix together with
/// the sublattice involution Γ = diag((−1)^x), which anticommutes with it
/// exactly.
pub fn ssh_single_particle(
    spec: &ChainSpec,
) -> Result<(SingleParticleHamiltonian, GammaInvolution)> {
    spec.validate()?;
    let l = spec.length;
    let mut h = CMat::zeros(l, l);
    let bonds = match spec.boundary {
        Boundary::Open => l - 1,
        Boundary::Periodic => l,
    };
    for x in 0..bonds {
        let alternation = if x % 2 == 0 { -spec.stagger } else { spec.stagger };
        let amplitude = Scalar::new(-spec.hopping * (1.0 + alternation), 0.0);
        let to = (x + 1) % l;
        h[(to, x)] += amplitude;
        h[(x, to)] += amplitude;
    }
    let gamma = GammaInvolution::from_signs(&sublattice_signs(l))?;
    Ok((SingleParticleHamiltonian::new(h)?, gamma))
}

/// Uniform-hopping ring whose dispersion is −t₀·cos(2πm/L): the bond
/// amplitude is −t₀/2. The returned involution is the real-space staggering
/// (−1)^x, which shifts momenta by π and hence flips the sign of the band.
pub fn cosine_band_ring(
    length: usize,
    t0: Real,
) -> Result<(SingleParticleHamiltonian, GammaInvolution)> {
    if length < 2 || length % 2 != 0 {
        return Err(PhsymError::invalid(format!(
            "momentum-shift staggering needs an even ring, got length {length}"
        )));
    }
    let mut h = CMat::zeros(length, length);
    for x in 0..length {
        let to = (x + 1) % length;
        let amplitude = Scalar::new(-t0 / 2.0, 0.0);
        h[(to, x)] += amplitude;
        h[(x, to)] += amplitude;
    }
    let gamma = GammaInvolution::from_signs(&sublattice_signs(length))?;
    Ok((SingleParticleHamiltonian::new(h)?, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{second_quantize_weyl, FockSpace};
    use crate::linalg::eigvalsh;
    use crate::models::staggered_k;
    use crate::phc::{check_chiral, check_symmetry};

    #[test]
    fn fully_dimerized_open_chain_has_two_dangling_zero_modes() {
        let spec = ChainSpec {
            length: 4,
            hopping: 1.0,
            stagger: 1.0,
            boundary: Boundary::Open,
        };
        let (h, _) = ssh_single_particle(&spec).unwrap();
        let spectrum = eigvalsh(h.matrix()).unwrap();
        let expected = [-2.0, 0.0, 0.0, 2.0];
        for (got, want) in spectrum.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{spectrum:?}");
        }
    }

    #[test]
    fn staggered_ring_spectrum_is_symmetric_about_zero() {
        let spec = ChainSpec {
            length: 8,
            hopping: 1.0,
            stagger: 0.5,
            boundary: Boundary::Periodic,
        };
        let (h, gamma) = ssh_single_particle(&spec).unwrap();
        assert_eq!(check_chiral(&gamma, &h).unwrap(), 0.0);
        let spectrum = eigvalsh(h.matrix()).unwrap();
        for (low, high) in spectrum.iter().zip(spectrum.iter().rev()) {
            assert!((low + high).abs() < 1e-10);
        }
    }

    #[test]
    fn chiral_residual_vanishes_exactly_for_bipartite_hopping() {
        let spec = ChainSpec {
            length: 6,
            hopping: 0.7,
            stagger: 0.3,
            boundary: Boundary::Open,
        };
        let (h, gamma) = ssh_single_particle(&spec).unwrap();
        assert_eq!(check_chiral(&gamma, &h).unwrap(), 0.0);
    }

    #[test]
    fn cosine_ring_matches_the_band_values() {
        let t0 = 1.3;
        let (h, gamma) = cosine_band_ring(4, t0).unwrap();
        let spectrum = eigvalsh(h.matrix()).unwrap();
        let expected = [-t0, 0.0, 0.0, t0];
        for (got, want) in spectrum.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "{spectrum:?}");
        }
        assert_eq!(check_chiral(&gamma, &h).unwrap(), 0.0);
    }

    #[test]
    fn cosine_band_sums_to_zero_over_momenta() {
        // Σ_k t(k) = 0: no constant is generated by commutator ordering.
        let (h, _) = cosine_band_ring(6, 2.0).unwrap();
        assert_eq!(h.trace(), 0.0);
    }

    #[test]
    fn cosine_ring_quantization_is_particle_hole_symmetric() {
        let length = 4;
        let (h, _) = cosine_band_ring(length, 1.0).unwrap();
        let space = FockSpace::full(length).unwrap();
        let quantized = second_quantize_weyl(&h, &space).unwrap();
        let sites: Vec<usize> = (0..length).collect();
        let k = staggered_k(&space, &sites).unwrap();
        assert!(check_symmetry(&k, &quantized).unwrap() < 1e-12);
    }

    #[test]
    fn odd_rings_are_rejected() {
        assert!(cosine_band_ring(5, 1.0).is_err());
        let spec = ChainSpec {
            length: 5,
            hopping: 1.0,
            stagger: 0.5,
            boundary: Boundary::Periodic,
        };
        assert!(ssh_single_particle(&spec).is_err());
    }
}
