//! Occupation-number bases for finite fermionic Fock spaces, plus the
//! generic product spaces used by spin chains.

use std::sync::Arc;

use crate::error::{PhsymError, Result};
use crate::MAX_ORBITALS;

/// A many-body basis state as an occupation bit pattern.
///
/// Orbital `j` occupies bit `j` (orbital 0 is the least significant bit).
/// The associated basis vector is the ordered wedge/creation product
/// `a†_{j1} … a†_{jn} |vac⟩` with `j1 < j2 < … < jn`.
pub type FockState = u32;

/// True if `orbital` is occupied in `state`.
pub fn occupied(state: FockState, orbital: usize) -> bool {
    (state >> orbital) & 1 == 1
}

/// Number of occupied orbitals.
pub fn particle_number(state: FockState) -> usize {
    state.count_ones() as usize
}

/// Jordan-Wigner sign `(−1)^{#occupied below orbital}` for acting with a
/// creation or annihilation operator on `orbital`.
pub fn jw_sign(state: FockState, orbital: usize) -> f64 {
    let below = state & ((1u32 << orbital) - 1);
    if below.count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Occupied orbitals in ascending order.
pub fn occupied_orbitals(state: FockState) -> Vec<usize> {
    let mut out = Vec::with_capacity(particle_number(state));
    let mut rest = state;
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        out.push(j);
        rest &= rest - 1;
    }
    out
}

/// Enumerates the occupation basis for `num_orbitals` orbitals, sorted
/// ascending by bit-pattern value.
///
/// With `sector = Some(n)` only patterns with `n` occupied orbitals are
/// returned. Errors if `num_orbitals` is outside `1..=24` or the sector
/// exceeds the orbital count.
pub fn enumerate_basis(num_orbitals: usize, sector: Option<usize>) -> Result<Vec<FockState>> {
    if num_orbitals == 0 || num_orbitals > MAX_ORBITALS {
        return Err(PhsymError::invalid(format!(
            "num_orbitals must be in 1..={MAX_ORBITALS}, got {num_orbitals}"
        )));
    }
    if let Some(n) = sector {
        if n > num_orbitals {
            return Err(PhsymError::invalid(format!(
                "sector {n} exceeds {num_orbitals} orbitals"
            )));
        }
    }
    let full = 1u64 << num_orbitals;
    let basis = match sector {
        None => (0..full).map(|b| b as FockState).collect(),
        Some(n) => (0..full)
            .map(|b| b as FockState)
            .filter(|b| b.count_ones() as usize == n)
            .collect(),
    };
    Ok(basis)
}

/// A fermionic Fock space over a finite set of orbitals, either the full
/// space or one particle-number sector.
#[derive(Debug)]
pub struct FockSpace {
    num_orbitals: usize,
    sector: Option<usize>,
    basis: Vec<FockState>,
}

impl FockSpace {
    /// Full Fock space on `num_orbitals` orbitals (dimension `2^N`).
    pub fn full(num_orbitals: usize) -> Result<Arc<Self>> {
        Ok(Arc::new(FockSpace {
            num_orbitals,
            sector: None,
            basis: enumerate_basis(num_orbitals, None)?,
        }))
    }

    /// The `n`-particle sector (dimension `C(N, n)`).
    pub fn sector(num_orbitals: usize, n: usize) -> Result<Arc<Self>> {
        Ok(Arc::new(FockSpace {
            num_orbitals,
            sector: Some(n),
            basis: enumerate_basis(num_orbitals, Some(n))?,
        }))
    }

    /// A subspace spanned by an explicit list of basis patterns (used for
    /// symmetry-resolved blocks). Patterns must be strictly increasing.
    pub(crate) fn with_basis(num_orbitals: usize, basis: Vec<FockState>) -> Result<Arc<Self>> {
        if num_orbitals == 0 || num_orbitals > MAX_ORBITALS {
            return Err(PhsymError::invalid(format!(
                "num_orbitals must be in 1..={MAX_ORBITALS}, got {num_orbitals}"
            )));
        }
        if basis.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PhsymError::invalid(
                "custom basis must be strictly increasing".to_string(),
            ));
        }
        if let Some(&max) = basis.last() {
            if u64::from(max) >= (1u64 << num_orbitals) {
                return Err(PhsymError::invalid(
                    "basis pattern exceeds orbital count".to_string(),
                ));
            }
        }
        Ok(Arc::new(FockSpace {
            num_orbitals,
            sector: None,
            basis,
        }))
    }

    /// Number of orbitals.
    pub fn num_orbitals(&self) -> usize {
        self.num_orbitals
    }

    /// Fixed particle number, if this is a single sector.
    pub fn sector_number(&self) -> Option<usize> {
        self.sector
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis patterns in ascending order.
    pub fn basis(&self) -> &[FockState] {
        &self.basis
    }

    /// Pattern of the `idx`-th basis vector.
    pub fn state(&self, idx: usize) -> FockState {
        self.basis[idx]
    }

    /// Index of a pattern in this basis, if present.
    pub fn index_of(&self, state: FockState) -> Option<usize> {
        if self.sector.is_none() && self.basis.len() == (1usize << self.num_orbitals) {
            // Full space: the basis is the identity enumeration.
            let idx = state as usize;
            return (idx < self.basis.len()).then_some(idx);
        }
        self.basis.binary_search(&state).ok()
    }

    /// True if the two spaces have identical bases.
    pub fn same_space(a: &Arc<FockSpace>, b: &Arc<FockSpace>) -> bool {
        Arc::ptr_eq(a, b) || (a.num_orbitals == b.num_orbitals && a.basis == b.basis)
    }
}

/// A product space of `sites` identical `local_dim`-dimensional factors
/// (spin chains, ladders of paired spins).
///
/// Basis index encoding: site `x` contributes digit `d_x` in base
/// `local_dim`, with site 0 the least significant digit; the basis vector
/// is `⊗_x |d_x⟩`.
#[derive(Debug, PartialEq, Eq)]
pub struct ProductSpace {
    local_dim: usize,
    sites: usize,
}

impl ProductSpace {
    /// Creates a product space; dimension `local_dim^sites` must stay at
    /// desk scale (≤ 2^24).
    pub fn new(local_dim: usize, sites: usize) -> Result<Arc<Self>> {
        if local_dim < 2 || sites == 0 {
            return Err(PhsymError::invalid(format!(
                "product space needs local_dim >= 2 and sites >= 1, got {local_dim}^{sites}"
            )));
        }
        let dim = (local_dim as u64).checked_pow(sites as u32);
        match dim {
            Some(d) if d <= (1 << 24) => Ok(Arc::new(ProductSpace { local_dim, sites })),
            _ => Err(PhsymError::invalid(format!(
                "product space {local_dim}^{sites} exceeds the desk-scale bound 2^24"
            ))),
        }
    }

    /// Local dimension of one site.
    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    /// Number of sites.
    pub fn sites(&self) -> usize {
        self.sites
    }

    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.local_dim.pow(self.sites as u32)
    }

    /// Digit of `index` at `site`.
    pub fn digit(&self, index: usize, site: usize) -> usize {
        index / self.local_dim.pow(site as u32) % self.local_dim
    }
}

/// The Hilbert space an operator acts on.
#[derive(Clone, Debug)]
pub enum Space {
    /// A fermionic Fock space (full or one sector).
    Fock(Arc<FockSpace>),
    /// A product of identical finite-dimensional sites.
    Product(Arc<ProductSpace>),
}

impl Space {
    /// Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        match self {
            Space::Fock(f) => f.dim(),
            Space::Product(p) => p.dim(),
        }
    }

    /// The underlying Fock space, if any.
    pub fn as_fock(&self) -> Option<&Arc<FockSpace>> {
        match self {
            Space::Fock(f) => Some(f),
            Space::Product(_) => None,
        }
    }

    /// True if both describe the same Hilbert space with the same basis.
    pub fn same(a: &Space, b: &Space) -> bool {
        match (a, b) {
            (Space::Fock(x), Space::Fock(y)) => FockSpace::same_space(x, y),
            (Space::Product(x), Space::Product(y)) => Arc::ptr_eq(x, y) || x == y,
            _ => false,
        }
    }
}

impl From<Arc<FockSpace>> for Space {
    fn from(f: Arc<FockSpace>) -> Self {
        Space::Fock(f)
    }
}

impl From<Arc<ProductSpace>> for Space {
    fn from(p: Arc<ProductSpace>) -> Self {
        Space::Product(p)
    }
}
