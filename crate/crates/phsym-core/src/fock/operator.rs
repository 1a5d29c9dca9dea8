//! Many-body operators: sparse matrices tagged with their domain and
//! codomain Hilbert spaces.

use crate::error::{PhsymError, Result};
use crate::fock::space::Space;
use crate::linalg::CsrMatrix;
use crate::{CMat, Real, Scalar};

/// A linear map between two finite-dimensional many-body Hilbert spaces.
#[derive(Clone, Debug)]
pub struct ManyBodyOperator {
    domain: Space,
    codomain: Space,
    matrix: CsrMatrix,
}

impl ManyBodyOperator {
    /// Wraps a matrix as an operator `domain -> codomain`.
    pub fn new(domain: Space, codomain: Space, matrix: CsrMatrix) -> Result<Self> {
        if matrix.ncols() != domain.dim() || matrix.nrows() != codomain.dim() {
            return Err(PhsymError::DimensionMismatch {
                context: "operator construction".into(),
                expected: codomain.dim() * domain.dim(),
                found: matrix.nrows() * matrix.ncols(),
            });
        }
        Ok(ManyBodyOperator {
            domain,
            codomain,
            matrix,
        })
    }

    /// Zero operator.
    pub fn zero(domain: Space, codomain: Space) -> Self {
        let matrix = CsrMatrix::zeros(codomain.dim(), domain.dim());
        ManyBodyOperator {
            domain,
            codomain,
            matrix,
        }
    }

    /// Identity operator on `space`.
    pub fn identity(space: Space) -> Self {
        let matrix = CsrMatrix::identity(space.dim());
        ManyBodyOperator {
            domain: space.clone(),
            codomain: space,
            matrix,
        }
    }

    /// Domain space.
    pub fn domain(&self) -> &Space {
        &self.domain
    }

    /// Codomain space.
    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    /// True if domain and codomain coincide.
    pub fn is_endomorphism(&self) -> bool {
        Space::same(&self.domain, &self.codomain)
    }

    /// Underlying sparse matrix.
    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    /// Dense copy of the matrix.
    pub fn to_dense(&self) -> CMat {
        self.matrix.to_dense()
    }

    /// Applies the operator to a coefficient vector.
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.matvec(x)
    }

    /// Operator composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &ManyBodyOperator) -> Result<ManyBodyOperator> {
        if !Space::same(&self.domain, &other.codomain) {
            return Err(PhsymError::SpaceMismatch("operator composition".into()));
        }
        Ok(ManyBodyOperator {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.matmul(&other.matrix)?,
        })
    }

    /// `self + alpha * other` on matching spaces.
    pub fn add_scaled(&self, other: &ManyBodyOperator, alpha: Scalar) -> Result<ManyBodyOperator> {
        if !Space::same(&self.domain, &other.domain) || !Space::same(&self.codomain, &other.codomain)
        {
            return Err(PhsymError::SpaceMismatch("operator sum".into()));
        }
        Ok(ManyBodyOperator {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.add_scaled(&other.matrix, alpha)?,
        })
    }

    /// Scalar multiple.
    pub fn scaled(&self, alpha: Scalar) -> ManyBodyOperator {
        ManyBodyOperator {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.scaled(alpha),
        }
    }

    /// Adjoint (conjugate transpose), swapping domain and codomain.
    pub fn dagger(&self) -> ManyBodyOperator {
        ManyBodyOperator {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: self.matrix.dagger(),
        }
    }

    /// Commutator `[self, other]`.
    pub fn commutator(&self, other: &ManyBodyOperator) -> Result<ManyBodyOperator> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        ab.add_scaled(&ba, Scalar::new(-1.0, 0.0))
    }

    /// Anticommutator `{self, other}`.
    pub fn anticommutator(&self, other: &ManyBodyOperator) -> Result<ManyBodyOperator> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        ab.add_scaled(&ba, Scalar::new(1.0, 0.0))
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> Real {
        self.matrix.max_abs()
    }

    /// Max-norm of `self - self†`.
    pub fn hermiticity_residual(&self) -> Real {
        self.matrix.hermiticity_residual()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::space::FockSpace;

    #[test]
    fn composition_checks_spaces() {
        let full3: Space = FockSpace::full(3).unwrap().into();
        let full2: Space = FockSpace::full(2).unwrap().into();
        let a = ManyBodyOperator::identity(full3.clone());
        let b = ManyBodyOperator::identity(full2);
        assert!(a.compose(&b).is_err());
        assert!(a.compose(&a).is_ok());
    }
}
