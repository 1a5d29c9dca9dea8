//! Antilinear maps between Fock spaces.
//!
//! An antilinear map is stored through its unitary part `M`: the action on
//! a coefficient vector is `ψ ↦ M ψ̄`. Composing two antilinear maps gives
//! the linear map `M₁ M̄₂`; conjugating a linear operator `A` gives
//! `M Ā M⁻¹`. The construction invariant is that `M` is an isometry,
//! `‖M†M − 1‖_max < 1e-12`, which is checked on every construction.

use crate::error::{PhsymError, Result};
use crate::fock::space::Space;
use crate::fock::ManyBodyOperator;
use crate::linalg::CsrMatrix;
use crate::{Real, Scalar, TOL_CONSTRUCTION};

/// An antilinear map `domain -> codomain`, acting as `ψ ↦ M ψ̄`.
#[derive(Clone, Debug)]
pub struct AntilinearMap {
    domain: Space,
    codomain: Space,
    unitary: CsrMatrix,
}

impl AntilinearMap {
    /// Wraps a unitary part; the isometry invariant `‖M†M − 1‖ < 1e-12`
    /// is verified.
    pub fn new(domain: Space, codomain: Space, unitary: CsrMatrix) -> Result<Self> {
        if unitary.ncols() != domain.dim() || unitary.nrows() != codomain.dim() {
            return Err(PhsymError::DimensionMismatch {
                context: "antilinear map construction".into(),
                expected: codomain.dim() * domain.dim(),
                found: unitary.nrows() * unitary.ncols(),
            });
        }
        let gram = unitary.dagger().matmul(&unitary)?;
        let residual = gram
            .add_scaled(&CsrMatrix::identity(domain.dim()), Scalar::new(-1.0, 0.0))?
            .max_abs();
        if residual > TOL_CONSTRUCTION {
            return Err(PhsymError::NotUnitary {
                residual,
                tolerance: TOL_CONSTRUCTION,
            });
        }
        Ok(AntilinearMap {
            domain,
            codomain,
            unitary,
        })
    }

    /// Domain space.
    pub fn domain(&self) -> &Space {
        &self.domain
    }

    /// Codomain space.
    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    /// The unitary part `M`.
    pub fn unitary_part(&self) -> &CsrMatrix {
        &self.unitary
    }

    /// Applies the map: `M ψ̄`.
    pub fn apply(&self, psi: &[Scalar]) -> Vec<Scalar> {
        let conj: Vec<Scalar> = psi.iter().map(|v| v.conj()).collect();
        self.unitary.matvec(&conj)
    }

    /// Inverse map (requires a square unitary part).
    pub fn inverse(&self) -> Result<AntilinearMap> {
        if self.domain.dim() != self.codomain.dim() {
            return Err(PhsymError::SpaceMismatch(
                "inverse of a non-square antilinear map".into(),
            ));
        }
        // (M ∘ conj)⁻¹ = conj ∘ M⁻¹ = (Mᵀ) ∘ conj for unitary M.
        Ok(AntilinearMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            unitary: self.unitary.transpose(),
        })
    }

    /// Composition with a linear map applied first: `self ∘ a`.
    pub fn compose_linear_first(&self, a: &ManyBodyOperator) -> Result<AntilinearMap> {
        if !Space::same(&self.domain, a.codomain()) {
            return Err(PhsymError::SpaceMismatch(
                "antilinear ∘ linear composition".into(),
            ));
        }
        AntilinearMap::new(
            a.domain().clone(),
            self.codomain.clone(),
            self.unitary.matmul(&a.matrix().conjugate())?,
        )
    }

    /// Composition with a linear map applied second: `a ∘ self`.
    pub fn compose_linear_second(&self, a: &ManyBodyOperator) -> Result<AntilinearMap> {
        if !Space::same(a.domain(), &self.codomain) {
            return Err(PhsymError::SpaceMismatch(
                "linear ∘ antilinear composition".into(),
            ));
        }
        AntilinearMap::new(
            self.domain.clone(),
            a.codomain().clone(),
            a.matrix().matmul(&self.unitary)?,
        )
    }

    /// Composition of two antilinear maps (`self ∘ other`), which is
    /// linear: `M₁ M̄₂`.
    pub fn compose_antilinear(&self, other: &AntilinearMap) -> Result<ManyBodyOperator> {
        if !Space::same(&self.domain, &other.codomain) {
            return Err(PhsymError::SpaceMismatch(
                "antilinear ∘ antilinear composition".into(),
            ));
        }
        ManyBodyOperator::new(
            other.domain.clone(),
            self.codomain.clone(),
            self.unitary.matmul(&other.unitary.conjugate())?,
        )
    }

    /// The linear map `self ∘ self` (requires an endomorphism).
    pub fn squared(&self) -> Result<ManyBodyOperator> {
        self.compose_antilinear(self)
    }

    /// Restricts the map to a sub-block: `rows`/`cols` index the retained
    /// codomain/domain basis vectors. Errors if the map does not close on
    /// the sub-block (entries would be lost).
    pub fn restrict(
        &self,
        new_domain: Space,
        cols: &[u32],
        new_codomain: Space,
        rows: &[u32],
    ) -> Result<AntilinearMap> {
        let block = self.unitary.select(rows, cols)?;
        // Closure check: the restricted map must keep every column's full
        // weight (each column of an isometry has unit norm).
        let lost = block.unitarity_residual();
        if lost > TOL_CONSTRUCTION {
            return Err(PhsymError::SpaceMismatch(format!(
                "antilinear map does not close on the requested sub-block \
                 (isometry defect {lost:.3e})"
            )));
        }
        AntilinearMap::new(new_domain, new_codomain, block)
    }
}

/// Conjugates an endomorphism by an antilinear map: `K A K⁻¹ = M Ā M†`.
///
/// `A` must be an endomorphism of `K`'s domain; the result is an
/// endomorphism of `K`'s codomain.
pub fn conjugate_by_antilinear(
    k: &AntilinearMap,
    a: &ManyBodyOperator,
) -> Result<ManyBodyOperator> {
    if !Space::same(a.domain(), a.codomain()) || !Space::same(a.domain(), &k.domain) {
        return Err(PhsymError::SpaceMismatch(
            "conjugation by an antilinear map".into(),
        ));
    }
    let m = &k.unitary;
    let inner = a.matrix().conjugate().matmul(&m.dagger())?;
    ManyBodyOperator::new(
        k.codomain.clone(),
        k.codomain.clone(),
        m.matmul(&inner)?,
    )
}

/// Conjugates a map `A: V → W` by a pair of antilinear maps
/// (`K_W ∘ A ∘ K_V⁻¹ = M_W Ā M_V†`).
pub fn conjugate_between(
    k_out: &AntilinearMap,
    a: &ManyBodyOperator,
    k_in: &AntilinearMap,
) -> Result<ManyBodyOperator> {
    if !Space::same(a.domain(), &k_in.domain) || !Space::same(a.codomain(), &k_out.domain) {
        return Err(PhsymError::SpaceMismatch(
            "conjugation by a pair of antilinear maps".into(),
        ));
    }
    let inner = a.matrix().conjugate().matmul(&k_in.unitary.dagger())?;
    ManyBodyOperator::new(
        k_in.codomain.clone(),
        k_out.codomain.clone(),
        k_out.unitary.matmul(&inner)?,
    )
}

/// Max-norm of `K A K⁻¹ − s A` (s = ±1): the basic symmetry residual.
pub fn symmetry_residual(k: &AntilinearMap, a: &ManyBodyOperator, sign: Real) -> Result<Real> {
    let conj = conjugate_by_antilinear(k, a)?;
    Ok(conj
        .add_scaled(a, Scalar::new(-sign, 0.0))?
        .max_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::space::FockSpace;

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    #[test]
    fn construction_rejects_non_isometries() {
        let space: Space = FockSpace::full(1).unwrap().into();
        let bad = CsrMatrix::from_triplets(2, 2, vec![(0, 0, c(2.0, 0.0)), (1, 1, c(1.0, 0.0))])
            .unwrap();
        assert!(AntilinearMap::new(space.clone(), space.clone(), bad).is_err());
        let good = CsrMatrix::from_triplets(2, 2, vec![(0, 1, c(0.0, 1.0)), (1, 0, c(1.0, 0.0))])
            .unwrap();
        assert!(AntilinearMap::new(space.clone(), space, good).is_ok());
    }

    #[test]
    fn apply_conjugates_coefficients() {
        let space: Space = FockSpace::full(1).unwrap().into();
        let m = CsrMatrix::identity(2);
        let k = AntilinearMap::new(space.clone(), space, m).unwrap();
        let out = k.apply(&[c(1.0, 2.0), c(0.0, -1.0)]);
        assert_eq!(out[0], c(1.0, -2.0));
        assert_eq!(out[1], c(0.0, 1.0));
    }

    #[test]
    fn inverse_undoes_the_map() {
        let space: Space = FockSpace::full(1).unwrap().into();
        let m = CsrMatrix::from_triplets(2, 2, vec![(0, 1, c(0.0, 1.0)), (1, 0, c(-1.0, 0.0))])
            .unwrap();
        let k = AntilinearMap::new(space.clone(), space.clone(), m).unwrap();
        let kinv = k.inverse().unwrap();
        let id = kinv.compose_antilinear(&k).unwrap();
        let dev = id
            .add_scaled(&ManyBodyOperator::identity(space), c(-1.0, 0.0))
            .unwrap()
            .max_abs();
        assert!(dev < 1e-15);
    }

    #[test]
    fn conjugation_is_antilinear_in_the_operator() {
        // K (iA) K⁻¹ = -i K A K⁻¹.
        let space: Space = FockSpace::full(1).unwrap().into();
        let m = CsrMatrix::from_triplets(2, 2, vec![(0, 1, c(1.0, 0.0)), (1, 0, c(1.0, 0.0))])
            .unwrap();
        let k = AntilinearMap::new(space.clone(), space.clone(), m).unwrap();
        let a = ManyBodyOperator::new(
            space.clone(),
            space.clone(),
            CsrMatrix::from_triplets(2, 2, vec![(0, 0, c(1.0, 0.0)), (0, 1, c(0.5, 0.5))]).unwrap(),
        )
        .unwrap();
        let lhs = conjugate_by_antilinear(&k, &a.scaled(c(0.0, 1.0))).unwrap();
        let rhs = conjugate_by_antilinear(&k, &a).unwrap().scaled(c(0.0, -1.0));
        let dev = lhs.add_scaled(&rhs, c(-1.0, 0.0)).unwrap().max_abs();
        assert!(dev < 1e-15);
    }
}
