//! Dense Hermitian eigendecomposition helpers on top of nalgebra.

use nalgebra::SymmetricEigen;

use crate::error::{PhsymError, Result};
use crate::{CMat, CVec, Real};

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvectors as matrix
/// columns in the same order. The input must be Hermitian to `1e-10`
/// relative to its largest entry; this is checked.
pub fn eigh(a: &CMat) -> Result<(Vec<Real>, CMat)> {
    if a.nrows() != a.ncols() {
        return Err(PhsymError::DimensionMismatch {
            context: "eigh".into(),
            expected: a.nrows(),
            found: a.ncols(),
        });
    }
    let scale = a.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
    let herm_residual = (a - a.adjoint()).iter().map(|v| v.norm()).fold(0.0, f64::max);
    if herm_residual > 1e-10 * scale {
        return Err(PhsymError::NotHermitian {
            residual: herm_residual,
            tolerance: 1e-10 * scale,
        });
    }
    let SymmetricEigen {
        eigenvalues,
        eigenvectors,
    } = a.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eigenvalues[i].partial_cmp(&eigenvalues[j]).expect("finite"));
    let values: Vec<Real> = order.iter().map(|&i| eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(a.nrows(), a.ncols());
    for (new, &old) in order.iter().enumerate() {
        vectors.set_column(new, &eigenvectors.column(old));
    }
    Ok((values, vectors))
}

/// Sorted eigenvalues of a Hermitian matrix.
pub fn eigvalsh(a: &CMat) -> Result<Vec<Real>> {
    eigh(a).map(|(vals, _)| vals)
}

/// Eigendecomposition of a real symmetric matrix, eigenvalues ascending.
///
/// Used for the small tridiagonal systems inside the Lanczos iteration.
pub fn eigh_real(a: &nalgebra::DMatrix<Real>) -> (Vec<Real>, nalgebra::DMatrix<Real>) {
    let SymmetricEigen {
        eigenvalues,
        eigenvectors,
    } = a.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eigenvalues[i].partial_cmp(&eigenvalues[j]).expect("finite"));
    let values: Vec<Real> = order.iter().map(|&i| eigenvalues[i]).collect();
    let mut vectors = nalgebra::DMatrix::<Real>::zeros(a.nrows(), a.ncols());
    for (new, &old) in order.iter().enumerate() {
        vectors.set_column(new, &eigenvectors.column(old));
    }
    (values, vectors)
}

/// Solves the linear system `A x = b` by LU with partial pivoting.
pub fn lu_solve(a: &CMat, b: &CVec) -> Result<CVec> {
    a.clone()
        .lu()
        .solve(b)
        .ok_or_else(|| PhsymError::invalid("linear system is singular".to_string()))
}

/// Solves `A X = B` for a matrix of right-hand sides, factorizing once.
pub fn lu_solve_matrix(a: &CMat, b: &CMat) -> Result<CMat> {
    a.clone()
        .lu()
        .solve(b)
        .ok_or_else(|| PhsymError::invalid("linear system is singular".to_string()))
}

/// Numerical rank via singular values (threshold relative to the
/// largest singular value).
pub fn rank(a: &CMat, rel_tol: Real) -> usize {
    let svals = a.clone().singular_values();
    let top = svals.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    svals.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Max-norm distance between two sets of sorted eigenvalues.
pub fn spectrum_distance(a: &[Real], b: &[Real]) -> Real {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    #[test]
    fn eigh_diagonalizes_a_complex_hermitian_matrix() {
        // [[2, i], [-i, 2]] has eigenvalues {1, 3}.
        let a = CMat::from_row_slice(
            2,
            2,
            &[
                Scalar::new(2.0, 0.0),
                Scalar::new(0.0, 1.0),
                Scalar::new(0.0, -1.0),
                Scalar::new(2.0, 0.0),
            ],
        );
        let (vals, vecs) = eigh(&a).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-12);
        assert!((vals[1] - 3.0).abs() < 1e-12);
        // Columns are orthonormal eigenvectors.
        for k in 0..2 {
            let v = vecs.column(k);
            let residual = &a * v - v.map(|x| x * Scalar::new(vals[k], 0.0));
            assert!(residual.iter().map(|x| x.norm()).fold(0.0, f64::max) < 1e-12);
        }
        let gram = vecs.adjoint() * &vecs;
        let eye = CMat::identity(2, 2);
        assert!((gram - eye).iter().map(|x| x.norm()).fold(0.0, f64::max) < 1e-12);
    }

    #[test]
    fn eigh_rejects_non_hermitian_input() {
        let a = CMat::from_row_slice(
            2,
            2,
            &[
                Scalar::new(0.0, 0.0),
                Scalar::new(1.0, 0.0),
                Scalar::new(2.0, 0.0),
                Scalar::new(0.0, 0.0),
            ],
        );
        assert!(eigh(&a).is_err());
    }

    #[test]
    fn rank_detects_deficiency() {
        let mut a = CMat::zeros(3, 2);
        a[(0, 0)] = Scalar::new(1.0, 0.0);
        a[(1, 1)] = Scalar::new(2.0, 0.0);
        assert_eq!(rank(&a, 1e-12), 2);
        a[(1, 1)] = Scalar::new(0.0, 0.0);
        assert_eq!(rank(&a, 1e-12), 1);
    }
}
