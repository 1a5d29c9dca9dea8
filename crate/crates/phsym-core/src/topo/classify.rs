//! Fourfold classification of the ground space of an interacting
//! Hamiltonian under an antiunitary charge-reversing symmetry.
//!
//! The class is read off two signs: whether K² restricted to the ground
//! space is +1 or −1, and whether K commutes or anticommutes with fermion
//! parity (−1)^F.

use crate::error::{PhsymError, Result};
use crate::fock::{symmetry_residual, AntilinearMap, FockSpace, ManyBodyOperator, Space};
use crate::linalg::{eigh, CsrMatrix};
use crate::{CMat, Real, Scalar, TOL_SPECTRAL};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// How the antiunitary symmetry relates to fermion parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityRelation {
    /// K (−1)^F = (−1)^F K.
    Commute,
    /// K (−1)^F = −(−1)^F K.
    Anticommute,
}

/// The four classes of (sign of K²|ground, parity relation).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    /// K² = +1, parity-commuting: an even real structure; the ground state
    /// can be unique.
    #[serde(rename = "i")]
    I,
    /// K² = −1, parity-commuting: an even quaternionic structure; ground
    /// states form Kramers pairs of equal parity.
    #[serde(rename = "ii")]
    II,
    /// K² = +1, parity-anticommuting: an odd real structure; paired ground
    /// states of opposite parity.
    #[serde(rename = "iii")]
    III,
    /// K² = −1, parity-anticommuting: an odd quaternionic structure.
    #[serde(rename = "iv")]
    IV,
}

impl CaseLabel {
    fn from_signs(k_square_sign: i32, parity: ParityRelation) -> CaseLabel {
        match (k_square_sign > 0, parity) {
            (true, ParityRelation::Commute) => CaseLabel::I,
            (false, ParityRelation::Commute) => CaseLabel::II,
            (true, ParityRelation::Anticommute) => CaseLabel::III,
            (false, ParityRelation::Anticommute) => CaseLabel::IV,
        }
    }
}

/// Outcome of a ground-space classification.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    /// Number of states within the gap tolerance of the lowest energy.
    pub ground_dim: usize,
    /// Sign of K² restricted to the ground space.
    pub k_square_sign: i32,
    /// Whether K commutes or anticommutes with fermion parity.
    pub parity_relation: ParityRelation,
    /// The resulting class.
    #[serde(rename = "case")]
    pub case_label: CaseLabel,
    /// Residuals of every verification that entered the classification.
    pub residuals: BTreeMap<String, Real>,
}

/// The fermion-parity operator (−1)^F = diag((−1)^{occupation count}).
pub fn fermion_parity_operator(space: &Arc<FockSpace>) -> Result<ManyBodyOperator> {
    let diagonal: Vec<Scalar> = (0..space.dim())
        .map(|idx| {
            let occupied = space.state(idx).count_ones();
            Scalar::new(if occupied % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
        })
        .collect();
    let sp: Space = space.clone().into();
    ManyBodyOperator::new(sp.clone(), sp, CsrMatrix::from_diagonal(&diagonal))
}

/// Ground-space columns of `h` within `tol` of the lowest eigenvalue,
/// refusing gaps that straddle the threshold.
fn ground_columns(h: &ManyBodyOperator, tol: Real) -> Result<CMat> {
    let (values, vectors) = eigh(&h.to_dense())?;
    let e0 = values[0];
    for &e in &values[1..] {
        // Refuse excitation energies within a factor 4 of the threshold on
        // either side; the band is empty for tol = 0, so exact degeneracies
        // still classify.
        let excitation = e - e0;
        if excitation >= tol / 4.0 && excitation < 4.0 * tol {
            return Err(PhsymError::ToleranceStraddle {
                eigenvalue: excitation,
                tolerance: tol,
            });
        }
    }
    let dim = values.iter().take_while(|&&e| e - e0 <= tol).count();
    let mut ground = CMat::zeros(vectors.nrows(), dim);
    for col in 0..dim {
        ground.set_column(col, &vectors.column(col));
    }
    Ok(ground)
}

/// Applies the antilinear map to every column.
fn apply_columns(k: &AntilinearMap, columns: &CMat) -> CMat {
    let mut out = CMat::zeros(columns.nrows(), columns.ncols());
    for col in 0..columns.ncols() {
        let image = k.apply(columns.column(col).as_slice());
        for (row, value) in image.into_iter().enumerate() {
            out[(row, col)] = value;
        }
    }
    out
}

/// Classifies the ground space of a K-symmetric Hamiltonian by the sign of
/// K² on it and by the parity behavior of K.
///
/// `tol_gap` bounds the excitation energy still counted as ground; it
/// defaults to 1e−6·‖H‖. The ground space must close under K, and K²
/// restricted to it must be ±1 times the identity; both are verified and
/// their residuals reported, together with the Hermiticity and symmetry
/// residuals of the inputs. Hamiltonians must act on a full fermionic Fock
/// space (fermion parity needs occupation numbers).
pub fn classify_ground_space(
    h: &ManyBodyOperator,
    k: &AntilinearMap,
    tol_gap: Option<Real>,
) -> Result<ClassificationResult> {
    if !Space::same(h.domain(), h.codomain())
        || !Space::same(h.domain(), k.domain())
        || !Space::same(k.domain(), k.codomain())
    {
        return Err(PhsymError::SpaceMismatch("ground-space classification".into()));
    }
    let space = h
        .domain()
        .as_fock()
        .ok_or_else(|| {
            PhsymError::invalid("classification needs a fermionic Fock space".to_string())
        })?
        .clone();
    if space.sector_number().is_some() {
        return Err(PhsymError::invalid(
            "classification needs the full Fock space (fermion parity mixes sectors under K)"
                .to_string(),
        ));
    }
    let mut residuals = BTreeMap::new();
    let scale = h.max_abs().max(1.0);

    let hermiticity = h.matrix().hermiticity_residual();
    residuals.insert("hermiticity".to_string(), hermiticity);
    if hermiticity > TOL_SPECTRAL * scale {
        return Err(PhsymError::NotHermitian {
            residual: hermiticity,
            tolerance: TOL_SPECTRAL * scale,
        });
    }
    let k_symmetry = symmetry_residual(k, h, 1.0)?;
    residuals.insert("k_symmetry".to_string(), k_symmetry);
    if k_symmetry > TOL_SPECTRAL * scale {
        return Err(PhsymError::SelfCheckFailed {
            check: "K commutes with H".to_string(),
            residual: k_symmetry,
            tolerance: TOL_SPECTRAL * scale,
        });
    }

    let tol = tol_gap.unwrap_or(1e-6 * h.max_abs());
    let ground = ground_columns(h, tol)?;
    let ground_dim = ground.ncols();

    // K-invariance: the K-image of the ground basis must stay in its span.
    let images = apply_columns(k, &ground);
    let overlap = ground.adjoint() * &images;
    let invariance = (&images - &ground * &overlap)
        .iter()
        .map(|v| v.norm())
        .fold(0.0, Real::max);
    residuals.insert("ground_invariance".to_string(), invariance);
    if invariance > TOL_SPECTRAL {
        return Err(PhsymError::GroundSpaceNotInvariant {
            residual: invariance,
            tolerance: TOL_SPECTRAL,
        });
    }

    // K² on the ground space, compared against ±identity.
    let twice = apply_columns(k, &images);
    let restricted = ground.adjoint() * twice;
    let identity = CMat::identity(ground_dim, ground_dim);
    let plus = (&restricted - &identity)
        .iter()
        .map(|v| v.norm())
        .fold(0.0, Real::max);
    let minus = (&restricted + &identity)
        .iter()
        .map(|v| v.norm())
        .fold(0.0, Real::max);
    let (k_square_sign, k_square_residual) = if plus <= minus { (1, plus) } else { (-1, minus) };
    residuals.insert("k_squared_scalar".to_string(), k_square_residual);
    if k_square_residual > TOL_SPECTRAL {
        return Err(PhsymError::KSquaredNotScalar {
            residual: k_square_residual,
        });
    }

    // Global parity behavior of K.
    let parity = fermion_parity_operator(&space)?;
    let commute = symmetry_residual(k, &parity, 1.0)?;
    let anticommute = symmetry_residual(k, &parity, -1.0)?;
    let (parity_relation, parity_residual) = if commute <= anticommute {
        (ParityRelation::Commute, commute)
    } else {
        (ParityRelation::Anticommute, anticommute)
    };
    residuals.insert("parity_relation".to_string(), parity_residual);
    if parity_residual > TOL_SPECTRAL {
        return Err(PhsymError::SelfCheckFailed {
            check: "K has a definite fermion-parity type".to_string(),
            residual: parity_residual,
            tolerance: TOL_SPECTRAL,
        });
    }

    Ok(ClassificationResult {
        ground_dim,
        k_square_sign,
        parity_relation,
        case_label: CaseLabel::from_signs(k_square_sign, parity_relation),
        residuals,
    })
}
