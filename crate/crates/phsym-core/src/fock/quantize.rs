//! Creation/annihilation matrices and Weyl-ordered second quantization
//! of one-body and pairing (Bogoliubov-de Gennes) Hamiltonians.
//!
//! Weyl ordering symmetrizes each quadratic monomial,
//! `(a†_j a_k)_W = a†_j a_k − δ_{jk}/2`, so a one-body matrix `h`
//! quantizes to `Σ_{jk} h_{jk} a†_j a_k − Tr(h)/2`. Pairing monomials
//! `a†a†` and `aa` are already antisymmetric, hence ordering-free. This
//! convention makes the many-body spectrum symmetric under particle-hole
//! conjugation whenever the one-body data is, which is the property the
//! rest of the crate verifies.

use std::sync::Arc;

use crate::error::{PhsymError, Result};
use crate::fock::expression::{OpSymbol, OperatorExpression};
use crate::fock::space::{jw_sign, occupied, FockSpace, Space};
use crate::fock::ManyBodyOperator;
use crate::linalg::CsrMatrix;
use crate::{CMat, Scalar, TOL_CONSTRUCTION};

/// Matrix of `a†_orbital` on `space`.
///
/// On the full space the operator is an endomorphism; on the `n`-particle
/// sector it maps into the `n+1` sector (an error if `n` equals the
/// orbital count).
pub fn creation_matrix(space: &Arc<FockSpace>, orbital: usize) -> Result<ManyBodyOperator> {
    ladder_matrix(space, orbital, true)
}

/// Matrix of `a_orbital` on `space`.
///
/// On the full space the operator is an endomorphism; on the `n`-particle
/// sector it maps into the `n−1` sector (an error if `n` is zero).
pub fn annihilation_matrix(space: &Arc<FockSpace>, orbital: usize) -> Result<ManyBodyOperator> {
    ladder_matrix(space, orbital, false)
}

fn ladder_matrix(
    space: &Arc<FockSpace>,
    orbital: usize,
    create: bool,
) -> Result<ManyBodyOperator> {
    if orbital >= space.num_orbitals() {
        return Err(PhsymError::invalid(format!(
            "orbital {orbital} outside 0..{}",
            space.num_orbitals()
        )));
    }
    let codomain: Arc<FockSpace> = match space.sector_number() {
        None => space.clone(),
        Some(n) => {
            if create && n == space.num_orbitals() {
                return Err(PhsymError::invalid(
                    "creation on the completely filled sector leaves the space".to_string(),
                ));
            }
            if !create && n == 0 {
                return Err(PhsymError::invalid(
                    "annihilation on the vacuum sector leaves the space".to_string(),
                ));
            }
            let m = if create { n + 1 } else { n - 1 };
            FockSpace::sector(space.num_orbitals(), m)?
        }
    };
    let mut triplets = Vec::new();
    for (col, &b) in space.basis().iter().enumerate() {
        let hit = if create {
            !occupied(b, orbital)
        } else {
            occupied(b, orbital)
        };
        if !hit {
            continue;
        }
        let target = b ^ (1 << orbital);
        let row = codomain.index_of(target).ok_or_else(|| {
            PhsymError::SpaceMismatch("ladder operator does not close on the subspace".into())
        })?;
        triplets.push((
            row as u32,
            col as u32,
            Scalar::new(jw_sign(b, orbital), 0.0),
        ));
    }
    let matrix = CsrMatrix::from_triplets(codomain.dim(), space.dim(), triplets)?;
    ManyBodyOperator::new(space.clone().into(), codomain.into(), matrix)
}

/// A Hermitian one-body (single-particle) Hamiltonian matrix.
#[derive(Clone, Debug)]
pub struct SingleParticleHamiltonian {
    matrix: CMat,
}

impl SingleParticleHamiltonian {
    /// Wraps a Hermitian matrix; Hermiticity is checked to `1e-12`
    /// relative to the largest entry.
    pub fn new(matrix: CMat) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(PhsymError::DimensionMismatch {
                context: "single-particle Hamiltonian".into(),
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let scale = matrix.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
        let residual = (&matrix - matrix.adjoint())
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        if residual > TOL_CONSTRUCTION * scale {
            return Err(PhsymError::NotHermitian {
                residual,
                tolerance: TOL_CONSTRUCTION * scale,
            });
        }
        Ok(SingleParticleHamiltonian { matrix })
    }

    /// Number of orbitals.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// The matrix itself.
    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// Real trace of the matrix.
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|j| self.matrix[(j, j)].re).sum()
    }

    /// The Weyl-ordered formal expression
    /// `Σ_{jk} h_{jk} a†_j a_k − Tr(h)/2`.
    pub fn weyl_expression(&self) -> Result<OperatorExpression> {
        let n = self.dim();
        let mut expr = OperatorExpression::new(n)?;
        for j in 0..n {
            for k in 0..n {
                expr.add_term(
                    self.matrix[(j, k)],
                    vec![OpSymbol::Create(j), OpSymbol::Annihilate(k)],
                )?;
            }
        }
        expr.add_term(Scalar::new(-self.trace() / 2.0, 0.0), vec![])?;
        Ok(expr)
    }
}

/// One-body plus pairing data of a Bogoliubov-de Gennes Hamiltonian.
#[derive(Clone, Debug)]
pub struct BdgHamiltonian {
    h: SingleParticleHamiltonian,
    delta: CMat,
}

impl BdgHamiltonian {
    /// Wraps `(h, Δ)`; `h` must be Hermitian and `Δ` antisymmetric, both
    /// to `1e-12` relative to their largest entries.
    pub fn new(h: CMat, delta: CMat) -> Result<Self> {
        let h = SingleParticleHamiltonian::new(h)?;
        if delta.nrows() != h.dim() || delta.ncols() != h.dim() {
            return Err(PhsymError::DimensionMismatch {
                context: "pairing matrix".into(),
                expected: h.dim(),
                found: delta.nrows(),
            });
        }
        let scale = delta.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
        let residual = (&delta + delta.transpose())
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        if residual > TOL_CONSTRUCTION * scale {
            return Err(PhsymError::NotAntisymmetric {
                residual,
                tolerance: TOL_CONSTRUCTION * scale,
            });
        }
        Ok(BdgHamiltonian { h, delta })
    }

    /// One-body part.
    pub fn h(&self) -> &SingleParticleHamiltonian {
        &self.h
    }

    /// Pairing matrix.
    pub fn delta(&self) -> &CMat {
        &self.delta
    }

    /// Number of orbitals.
    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    /// The Weyl-ordered formal expression
    /// `Σ h_{jk} a†_j a_k − Tr(h)/2 + ½ Σ (Δ_{jk} a†_j a†_k + Δ̄_{jk} a_k a_j)`.
    pub fn weyl_expression(&self) -> Result<OperatorExpression> {
        let n = self.dim();
        let mut expr = self.h.weyl_expression()?;
        let half = Scalar::new(0.5, 0.0);
        for j in 0..n {
            for k in 0..n {
                let d = self.delta[(j, k)];
                expr.add_term(half * d, vec![OpSymbol::Create(j), OpSymbol::Create(k)])?;
                expr.add_term(
                    half * d.conj(),
                    vec![OpSymbol::Annihilate(k), OpSymbol::Annihilate(j)],
                )?;
            }
        }
        Ok(expr)
    }
}

/// Weyl-ordered second quantization of a one-body Hamiltonian:
/// `H = Σ_{jk} h_{jk} a†_j a_k − Tr(h)/2` on `space`.
///
/// Particle number is conserved, so any sector space is allowed.
pub fn second_quantize_weyl(
    h: &SingleParticleHamiltonian,
    space: &Arc<FockSpace>,
) -> Result<ManyBodyOperator> {
    if h.dim() != space.num_orbitals() {
        return Err(PhsymError::DimensionMismatch {
            context: "second quantization".into(),
            expected: space.num_orbitals(),
            found: h.dim(),
        });
    }
    let dim = space.dim();
    let mut triplets = Vec::new();
    let shift = -h.trace() / 2.0;
    let hm = h.matrix();
    for (col, &b) in space.basis().iter().enumerate() {
        triplets.push((col as u32, col as u32, Scalar::new(shift, 0.0)));
        one_body_row(hm, space, b, col, &mut triplets)?;
    }
    let matrix = CsrMatrix::from_triplets(dim, dim, triplets)?;
    let sp: Space = space.clone().into();
    ManyBodyOperator::new(sp.clone(), sp, matrix)
}

/// Weyl-ordered second quantization of a pairing Hamiltonian:
/// `H = Σ h_{jk} a†_j a_k − Tr(h)/2 + ½ Σ (Δ_{jk} a†_j a†_k + Δ̄_{jk} a_k a_j)`
/// on the full Fock space.
///
/// The pairing terms change particle number by two, so sector spaces are
/// rejected.
pub fn second_quantize_bdg(
    bdg: &BdgHamiltonian,
    space: &Arc<FockSpace>,
) -> Result<ManyBodyOperator> {
    if bdg.dim() != space.num_orbitals() {
        return Err(PhsymError::DimensionMismatch {
            context: "second quantization".into(),
            expected: space.num_orbitals(),
            found: bdg.dim(),
        });
    }
    if space.sector_number().is_some() {
        return Err(PhsymError::SectorMismatch { net: 2 });
    }
    let n = bdg.dim();
    let dim = space.dim();
    let mut triplets = Vec::new();
    let shift = -bdg.h().trace() / 2.0;
    let hm = bdg.h().matrix();
    let delta = bdg.delta();
    for (col, &b) in space.basis().iter().enumerate() {
        triplets.push((col as u32, col as u32, Scalar::new(shift, 0.0)));
        one_body_row(hm, space, b, col, &mut triplets)?;
        for k in 0..n {
            // ½ Δ_{jk} a†_j a†_k (apply a†_k first).
            if !occupied(b, k) {
                let s_k = jw_sign(b, k);
                let b1 = b | (1 << k);
                for j in 0..n {
                    let d = delta[(j, k)];
                    if (d.re == 0.0 && d.im == 0.0) || occupied(b1, j) {
                        continue;
                    }
                    let s_j = jw_sign(b1, j);
                    let target = b1 | (1 << j);
                    let row = space.index_of(target).expect("full space is closed");
                    triplets.push((
                        row as u32,
                        col as u32,
                        Scalar::new(0.5 * s_k * s_j, 0.0) * d,
                    ));
                }
            }
            // ½ Δ̄_{jk} a_k a_j (apply a_j first).
            for j in 0..n {
                let d = delta[(j, k)].conj();
                if (d.re == 0.0 && d.im == 0.0) || !occupied(b, j) {
                    continue;
                }
                let s_j = jw_sign(b, j);
                let b1 = b & !(1 << j);
                if !occupied(b1, k) {
                    continue;
                }
                let s_k = jw_sign(b1, k);
                let target = b1 & !(1 << k);
                let row = space.index_of(target).expect("full space is closed");
                triplets.push((
                    row as u32,
                    col as u32,
                    Scalar::new(0.5 * s_j * s_k, 0.0) * d,
                ));
            }
        }
    }
    let matrix = CsrMatrix::from_triplets(dim, dim, triplets)?;
    let sp: Space = space.clone().into();
    ManyBodyOperator::new(sp.clone(), sp, matrix)
}

/// Accumulates the `Σ_{jk} h_{jk} a†_j a_k` action on basis state `b`.
fn one_body_row(
    hm: &CMat,
    space: &Arc<FockSpace>,
    b: u32,
    col: usize,
    triplets: &mut Vec<(u32, u32, Scalar)>,
) -> Result<()> {
    let n = hm.nrows();
    for k in 0..n {
        if !occupied(b, k) {
            continue;
        }
        let s_k = jw_sign(b, k);
        let b1 = b & !(1 << k);
        for j in 0..n {
            let v = hm[(j, k)];
            if (v.re == 0.0 && v.im == 0.0) || occupied(b1, j) {
                continue;
            }
            let s_j = jw_sign(b1, j);
            let target = b1 | (1 << j);
            let row = space.index_of(target).ok_or_else(|| {
                PhsymError::SpaceMismatch(
                    "one-body action does not preserve the chosen subspace".into(),
                )
            })?;
            triplets.push((
                row as u32,
                col as u32,
                Scalar::new(s_k * s_j, 0.0) * v,
            ));
        }
    }
    Ok(())
}
