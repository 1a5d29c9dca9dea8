//! Model parameter records and the shared orbital layout for multi-index
//! lattices.

use crate::error::{PhsymError, Result};
use crate::{Real, Scalar, MAX_ORBITALS};
use serde::{Deserialize, Serialize};

/// Boundary condition of a one-dimensional lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Bonds between sites x and x+1 for x < L−1 only.
    Open,
    /// Additionally the wrap-around bond (L−1, 0).
    Periodic,
}

/// Parameters of a staggered-hopping chain: bond x carries the amplitude
/// −t·(1 + (−1)^{x+1}·δ), so the bond at x = 0 is the weak one.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ChainSpec {
    /// Number of sites L.
    pub length: usize,
    /// Hopping energy t.
    pub hopping: Real,
    /// Dimensionless staggering δ ∈ [0, 1].
    pub stagger: Real,
    /// Boundary condition.
    pub boundary: Boundary,
}

impl ChainSpec {
    /// Checks the documented invariants: L ≥ 2, δ ∈ [0, 1], and even length
    /// for periodic staggered chains (odd rings cannot dimerize).
    pub fn validate(&self) -> Result<()> {
        if self.length < 2 {
            return Err(PhsymError::invalid(format!(
                "chain needs at least 2 sites, got {}",
                self.length
            )));
        }
        if !(0.0..=1.0).contains(&self.stagger) {
            return Err(PhsymError::invalid(format!(
                "staggering must lie in [0, 1], got {}",
                self.stagger
            )));
        }
        if self.boundary == Boundary::Periodic && self.stagger > 0.0 && self.length % 2 != 0 {
            return Err(PhsymError::invalid(
                "periodic staggered chains require an even length".to_string(),
            ));
        }
        Ok(())
    }
}

/// Parameters of the (possibly two-chain, possibly staggered) Hubbard model.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct HubbardSpec {
    /// Number of sites per chain.
    pub length: usize,
    /// Hopping amplitude t (complex allowed; the reverse hop carries t̄).
    pub hopping: Scalar,
    /// On-site repulsion U ≥ 0, coupling to the squared excess charge.
    pub onsite: Real,
    /// Ferromagnetic inter-chain Hund coupling V ≥ 0 (two chains only).
    pub hund: Real,
    /// Number of chains (1 or 2).
    pub chains: usize,
    /// Whether each site carries a spin-½ doublet.
    pub spinful: bool,
    /// Dimensionless hopping staggering δ ∈ [0, 1] (0 = uniform chain).
    pub stagger: Real,
    /// Boundary condition.
    pub boundary: Boundary,
}

impl HubbardSpec {
    /// Checks the documented invariants.
    pub fn validate(&self) -> Result<()> {
        if self.length < 2 {
            return Err(PhsymError::invalid(format!(
                "chain needs at least 2 sites, got {}",
                self.length
            )));
        }
        if self.chains != 1 && self.chains != 2 {
            return Err(PhsymError::invalid(format!(
                "chain count must be 1 or 2, got {}",
                self.chains
            )));
        }
        if self.chains == 2 && !self.spinful {
            return Err(PhsymError::invalid(
                "the two-chain model requires spinful fermions".to_string(),
            ));
        }
        if self.onsite < 0.0 {
            return Err(PhsymError::invalid("on-site coupling must be ≥ 0".to_string()));
        }
        if self.hund < 0.0 {
            return Err(PhsymError::invalid("Hund coupling must be ≥ 0".to_string()));
        }
        if self.hund > 0.0 && self.chains != 2 {
            return Err(PhsymError::invalid(
                "the Hund coupling acts between two chains".to_string(),
            ));
        }
        if !(0.0..=1.0).contains(&self.stagger) {
            return Err(PhsymError::invalid(format!(
                "staggering must lie in [0, 1], got {}",
                self.stagger
            )));
        }
        if self.boundary == Boundary::Periodic && self.stagger > 0.0 && self.length % 2 != 0 {
            return Err(PhsymError::invalid(
                "periodic staggered chains require an even length".to_string(),
            ));
        }
        Ok(())
    }
}

/// Parameters of an SU(2)-invariant Heisenberg spin chain.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SpinChainSpec {
    /// Number of spins L.
    pub length: usize,
    /// Exchange coupling J (antiferromagnetic for J > 0).
    pub coupling: Real,
    /// Twice the local spin: 1 for S = ½, 2 for S = 1.
    pub two_s: usize,
    /// Boundary condition.
    pub boundary: Boundary,
}

impl SpinChainSpec {
    /// Checks the documented invariants.
    pub fn validate(&self) -> Result<()> {
        if self.length < 2 {
            return Err(PhsymError::invalid(format!(
                "spin chain needs at least 2 sites, got {}",
                self.length
            )));
        }
        if self.two_s != 1 && self.two_s != 2 {
            return Err(PhsymError::invalid(format!(
                "supported spins are S = 1/2 and S = 1, got 2S = {}",
                self.two_s
            )));
        }
        Ok(())
    }
}

/// The fixed orbital layout for multi-index chains:
///
/// ```text
/// orbital index = x + L·(s + 2·λ),   s ∈ {0 = ↑, 1 = ↓},   λ ∈ {0, 1}.
/// ```
///
/// Spinless single-chain systems reduce to `index = x`. All sign conventions
/// downstream (staggered transformations, spin operators, Hund couplings)
/// assume this one layout.
#[derive(Clone, Copy, Debug)]
pub struct HubbardLayout {
    length: usize,
    spin_species: usize,
    chains: usize,
}

impl HubbardLayout {
    /// Builds a layout; the total orbital count must fit the Fock-space cap.
    pub fn new(length: usize, spinful: bool, chains: usize) -> Result<Self> {
        if length == 0 {
            return Err(PhsymError::invalid("layout needs at least one site".to_string()));
        }
        if chains != 1 && chains != 2 {
            return Err(PhsymError::invalid(format!(
                "chain count must be 1 or 2, got {chains}"
            )));
        }
        if chains == 2 && !spinful {
            return Err(PhsymError::invalid(
                "the two-chain layout requires spinful fermions".to_string(),
            ));
        }
        let layout = HubbardLayout {
            length,
            spin_species: if spinful { 2 } else { 1 },
            chains,
        };
        if layout.num_orbitals() > MAX_ORBITALS {
            return Err(PhsymError::invalid(format!(
                "layout with {} orbitals exceeds the cap of {MAX_ORBITALS}",
                layout.num_orbitals()
            )));
        }
        Ok(layout)
    }

    /// Layout implied by a Hubbard specification.
    pub fn from_spec(spec: &HubbardSpec) -> Result<Self> {
        spec.validate()?;
        Self::new(spec.length, spec.spinful, spec.chains)
    }

    /// Sites per chain.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of spin species (1 or 2).
    pub fn spin_species(&self) -> usize {
        self.spin_species
    }

    /// Number of chains (1 or 2).
    pub fn chains(&self) -> usize {
        self.chains
    }

    /// Total number of orbitals.
    pub fn num_orbitals(&self) -> usize {
        self.length * self.spin_species * self.chains
    }

    /// Orbital index of (site, spin, chain).
    pub fn orbital(&self, x: usize, spin: usize, chain: usize) -> usize {
        debug_assert!(x < self.length && spin < self.spin_species && chain < self.chains);
        x + self.length * (spin + 2 * chain)
    }

    /// Site x carried by an orbital index.
    pub fn site_of(&self, orbital: usize) -> usize {
        orbital % self.length
    }

    /// Site index of every orbital, in orbital order (the input expected by
    /// the staggered transformation builder).
    pub fn orbital_sites(&self) -> Vec<usize> {
        (0..self.num_orbitals()).map(|j| self.site_of(j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_invariants_are_enforced() {
        let bad_length = ChainSpec {
            length: 1,
            hopping: 1.0,
            stagger: 0.0,
            boundary: Boundary::Open,
        };
        assert!(bad_length.validate().is_err());

        let odd_ring = ChainSpec {
            length: 5,
            hopping: 1.0,
            stagger: 0.5,
            boundary: Boundary::Periodic,
        };
        assert!(odd_ring.validate().is_err());

        let odd_uniform_ring = ChainSpec {
            length: 5,
            hopping: 1.0,
            stagger: 0.0,
            boundary: Boundary::Periodic,
        };
        assert!(odd_uniform_ring.validate().is_ok());
    }

    #[test]
    fn two_chain_models_must_be_spinful() {
        let spec = HubbardSpec {
            length: 2,
            hopping: Scalar::new(1.0, 0.0),
            onsite: 0.0,
            hund: 0.0,
            chains: 2,
            spinful: false,
            stagger: 0.0,
            boundary: Boundary::Open,
        };
        assert!(spec.validate().is_err());
    }

    #[test]
    fn layout_places_site_spin_chain_blocks_in_order() {
        let layout = HubbardLayout::new(3, true, 2).unwrap();
        assert_eq!(layout.num_orbitals(), 12);
        assert_eq!(layout.orbital(0, 0, 0), 0);
        assert_eq!(layout.orbital(2, 0, 0), 2);
        assert_eq!(layout.orbital(0, 1, 0), 3);
        assert_eq!(layout.orbital(0, 0, 1), 6);
        assert_eq!(layout.orbital(2, 1, 1), 11);
        for orbital in 0..layout.num_orbitals() {
            assert_eq!(layout.site_of(orbital), orbital % 3);
        }
    }
}
