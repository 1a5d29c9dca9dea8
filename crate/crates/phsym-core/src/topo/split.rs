//! Splitting a single-particle spectrum into positive, zero, and negative
//! energy subspaces.

use crate::error::{PhsymError, Result};
use crate::fock::SingleParticleHamiltonian;
use crate::linalg::eigh;
use crate::{CMat, Real};

/// Orthonormal eigenbases of the positive-, zero-, and negative-energy
/// subspaces of a single-particle Hamiltonian.
///
/// Eigenvalues within each block stay in ascending order; the three blocks
/// together span the whole space.
#[derive(Clone, Debug)]
pub struct SpectralSplit {
    positive: CMat,
    zero: CMat,
    negative: CMat,
    positive_energies: Vec<Real>,
    zero_energies: Vec<Real>,
    negative_energies: Vec<Real>,
    tol_zero: Real,
}

impl SpectralSplit {
    /// Columns spanning the positive-energy subspace.
    pub fn positive(&self) -> &CMat {
        &self.positive
    }

    /// Columns spanning the zero-mode subspace (|E| below the tolerance).
    pub fn zero(&self) -> &CMat {
        &self.zero
    }

    /// Columns spanning the negative-energy subspace.
    pub fn negative(&self) -> &CMat {
        &self.negative
    }

    /// Eigenvalues of the positive block, ascending.
    pub fn positive_energies(&self) -> &[Real] {
        &self.positive_energies
    }

    /// Eigenvalues kept in the zero block, ascending.
    pub fn zero_energies(&self) -> &[Real] {
        &self.zero_energies
    }

    /// Eigenvalues of the negative block, ascending.
    pub fn negative_energies(&self) -> &[Real] {
        &self.negative_energies
    }

    /// Energy threshold that separated the blocks.
    pub fn tol_zero(&self) -> Real {
        self.tol_zero
    }

    /// Dimension of the zero-mode subspace.
    pub fn zero_dim(&self) -> usize {
        self.zero.ncols()
    }
}

/// Splits the spectrum of `h` into negative, zero, and positive energy
/// blocks at threshold `tol`.
///
/// An eigenvalue counts as a zero mode when |E| < tol/4 and as a signed
/// mode when |E| ≥ 4·tol; anything in between is ambiguous at the given
/// threshold and is refused, so a successful split never depends on which
/// side of the threshold a borderline level happened to fall.
pub fn split_spectrum(h: &SingleParticleHamiltonian, tol: Real) -> Result<SpectralSplit> {
    if tol <= 0.0 {
        return Err(PhsymError::invalid(format!(
            "splitting tolerance must be positive, got {tol}"
        )));
    }
    let (values, vectors) = eigh(h.matrix())?;
    for &e in &values {
        let magnitude = e.abs();
        if magnitude >= tol / 4.0 && magnitude < 4.0 * tol {
            return Err(PhsymError::ToleranceStraddle {
                eigenvalue: magnitude,
                tolerance: tol,
            });
        }
    }
    let mut blocks: [(Vec<usize>, Vec<Real>); 3] = Default::default();
    for (idx, &e) in values.iter().enumerate() {
        let block = if e.abs() < tol {
            1
        } else if e > 0.0 {
            2
        } else {
            0
        };
        blocks[block].0.push(idx);
        blocks[block].1.push(e);
    }
    let dim = h.dim();
    let collect = |indices: &[usize]| {
        let mut m = CMat::zeros(dim, indices.len());
        for (new, &old) in indices.iter().enumerate() {
            m.set_column(new, &vectors.column(old));
        }
        m
    };
    let [(neg_idx, negative_energies), (zero_idx, zero_energies), (pos_idx, positive_energies)] =
        blocks;
    Ok(SpectralSplit {
        positive: collect(&pos_idx),
        zero: collect(&zero_idx),
        negative: collect(&neg_idx),
        positive_energies,
        zero_energies,
        negative_energies,
        tol_zero: tol,
    })
}
