//! Compressed sparse row matrices over `Complex64`.
//!
//! Fock-space operators are dominated by signed permutations and few-term
//! hopping stencils, so a small CSR type with exact (non-thresholding)
//! arithmetic covers everything the crate needs: matrix-vector products,
//! sums, products, adjoints, and sub-block extraction. Entries that are
//! exactly zero are pruned; small values are never dropped, since the
//! residual checks in this crate are meaningful down to 1e-15.

use crate::error::{PhsymError, Result};
use crate::{CMat, Scalar};

/// Sparse complex matrix in compressed sparse row format.
#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    /// Row pointer array of length `nrows + 1`.
    indptr: Vec<usize>,
    /// Column indices, sorted within each row.
    indices: Vec<u32>,
    /// Entry values, parallel to `indices`.
    values: Vec<Scalar>,
}

impl CsrMatrix {
    /// Builds a matrix from (row, col, value) triplets.
    ///
    /// Duplicate positions are summed; exact zeros are pruned.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        mut triplets: Vec<(u32, u32, Scalar)>,
    ) -> Result<Self> {
        for &(r, c, _) in &triplets {
            if r as usize >= nrows || c as usize >= ncols {
                return Err(PhsymError::invalid(format!(
                    "triplet ({r}, {c}) outside a {nrows}x{ncols} matrix"
                )));
            }
        }
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut indptr = vec![0usize; nrows + 1];
        let mut indices = Vec::with_capacity(triplets.len());
        let mut values: Vec<Scalar> = Vec::with_capacity(triplets.len());
        let mut i = 0;
        while i < triplets.len() {
            let (r, c, _) = triplets[i];
            let mut v = Scalar::new(0.0, 0.0);
            while i < triplets.len() && triplets[i].0 == r && triplets[i].1 == c {
                v += triplets[i].2;
                i += 1;
            }
            if v.re != 0.0 || v.im != 0.0 {
                indices.push(c);
                values.push(v);
            }
            indptr[r as usize + 1] = indices.len();
        }
        // Rows without entries still hold 0; carry row ends forward.
        for k in 0..nrows {
            if indptr[k + 1] < indptr[k] {
                indptr[k + 1] = indptr[k];
            }
        }
        Ok(CsrMatrix {
            nrows,
            ncols,
            indptr,
            indices,
            values,
        })
    }

    /// All-zero matrix.
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        CsrMatrix {
            nrows,
            ncols,
            indptr: vec![0; nrows + 1],
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        CsrMatrix {
            nrows: n,
            ncols: n,
            indptr: (0..=n).collect(),
            indices: (0..n as u32).collect(),
            values: vec![Scalar::new(1.0, 0.0); n],
        }
    }

    /// Diagonal matrix from the given entries.
    pub fn from_diagonal(diag: &[Scalar]) -> Self {
        let n = diag.len();
        let mut m = CsrMatrix {
            nrows: n,
            ncols: n,
            indptr: (0..=n).collect(),
            indices: (0..n as u32).collect(),
            values: diag.to_vec(),
        };
        m.prune_zeros();
        m
    }

    /// Number of rows.
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Number of stored entries.
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Iterator over stored entries as `(row, col, value)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Scalar)> + '_ {
        (0..self.nrows).flat_map(move |r| {
            (self.indptr[r]..self.indptr[r + 1])
                .map(move |k| (r, self.indices[k] as usize, self.values[k]))
        })
    }

    /// Entry at `(row, col)` (zero if not stored).
    pub fn get(&self, row: usize, col: usize) -> Scalar {
        let lo = self.indptr[row];
        let hi = self.indptr[row + 1];
        match self.indices[lo..hi].binary_search(&(col as u32)) {
            Ok(k) => self.values[lo + k],
            Err(_) => Scalar::new(0.0, 0.0),
        }
    }

    fn prune_zeros(&mut self) {
        if !self.values.iter().any(|v| v.re == 0.0 && v.im == 0.0) {
            return;
        }
        let mut indptr = vec![0usize; self.nrows + 1];
        let mut indices = Vec::with_capacity(self.nnz());
        let mut values = Vec::with_capacity(self.nnz());
        for r in 0..self.nrows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                let v = self.values[k];
                if v.re != 0.0 || v.im != 0.0 {
                    indices.push(self.indices[k]);
                    values.push(v);
                }
            }
            indptr[r + 1] = indices.len();
        }
        self.indptr = indptr;
        self.indices = indices;
        self.values = values;
    }

    /// `y = A x`.
    pub fn matvec_into(&self, x: &[Scalar], y: &mut [Scalar]) {
        debug_assert_eq!(x.len(), self.ncols);
        debug_assert_eq!(y.len(), self.nrows);
        for r in 0..self.nrows {
            let mut acc = Scalar::new(0.0, 0.0);
            for k in self.indptr[r]..self.indptr[r + 1] {
                acc += self.values[k] * x[self.indices[k] as usize];
            }
            y[r] = acc;
        }
    }

    /// `A x` as a fresh vector.
    pub fn matvec(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut y = vec![Scalar::new(0.0, 0.0); self.nrows];
        self.matvec_into(x, &mut y);
        y
    }

    /// `A + alpha B`.
    pub fn add_scaled(&self, other: &CsrMatrix, alpha: Scalar) -> Result<CsrMatrix> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(PhsymError::DimensionMismatch {
                context: "sparse add".into(),
                expected: self.nrows * self.ncols,
                found: other.nrows * other.ncols,
            });
        }
        let mut indptr = vec![0usize; self.nrows + 1];
        let mut indices = Vec::with_capacity(self.nnz() + other.nnz());
        let mut values = Vec::with_capacity(self.nnz() + other.nnz());
        for r in 0..self.nrows {
            let (mut i, ei) = (self.indptr[r], self.indptr[r + 1]);
            let (mut j, ej) = (other.indptr[r], other.indptr[r + 1]);
            while i < ei || j < ej {
                let (c, v) = if j >= ej || (i < ei && self.indices[i] < other.indices[j]) {
                    let out = (self.indices[i], self.values[i]);
                    i += 1;
                    out
                } else if i >= ei || other.indices[j] < self.indices[i] {
                    let out = (other.indices[j], alpha * other.values[j]);
                    j += 1;
                    out
                } else {
                    let out = (self.indices[i], self.values[i] + alpha * other.values[j]);
                    i += 1;
                    j += 1;
                    out
                };
                if v.re != 0.0 || v.im != 0.0 {
                    indices.push(c);
                    values.push(v);
                }
            }
            indptr[r + 1] = indices.len();
        }
        Ok(CsrMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            indptr,
            indices,
            values,
        })
    }

    /// `alpha A`.
    pub fn scaled(&self, alpha: Scalar) -> CsrMatrix {
        let mut out = self.clone();
        for v in &mut out.values {
            *v *= alpha;
        }
        out.prune_zeros();
        out
    }

    /// `A B` (row-by-row Gustavson product with a dense accumulator).
    pub fn matmul(&self, other: &CsrMatrix) -> Result<CsrMatrix> {
        if self.ncols != other.nrows {
            return Err(PhsymError::DimensionMismatch {
                context: "sparse matmul".into(),
                expected: self.ncols,
                found: other.nrows,
            });
        }
        let ncols = other.ncols;
        let mut acc = vec![Scalar::new(0.0, 0.0); ncols];
        let mut touched: Vec<u32> = Vec::new();
        let mut indptr = vec![0usize; self.nrows + 1];
        let mut indices: Vec<u32> = Vec::new();
        let mut values: Vec<Scalar> = Vec::new();
        for r in 0..self.nrows {
            touched.clear();
            for k in self.indptr[r]..self.indptr[r + 1] {
                let a = self.values[k];
                let mid = self.indices[k] as usize;
                for l in other.indptr[mid]..other.indptr[mid + 1] {
                    let c = other.indices[l];
                    if acc[c as usize].re == 0.0 && acc[c as usize].im == 0.0 {
                        touched.push(c);
                    }
                    acc[c as usize] += a * other.values[l];
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                let v = acc[c as usize];
                acc[c as usize] = Scalar::new(0.0, 0.0);
                if v.re != 0.0 || v.im != 0.0 {
                    indices.push(c);
                    values.push(v);
                }
            }
            indptr[r + 1] = indices.len();
        }
        Ok(CsrMatrix {
            nrows: self.nrows,
            ncols,
            indptr,
            indices,
            values,
        })
    }

    /// Transpose.
    pub fn transpose(&self) -> CsrMatrix {
        let mut counts = vec![0usize; self.ncols + 1];
        for &c in &self.indices {
            counts[c as usize + 1] += 1;
        }
        for k in 0..self.ncols {
            counts[k + 1] += counts[k];
        }
        let indptr = counts.clone();
        let mut indices = vec![0u32; self.nnz()];
        let mut values = vec![Scalar::new(0.0, 0.0); self.nnz()];
        for r in 0..self.nrows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                let c = self.indices[k] as usize;
                let slot = counts[c];
                counts[c] += 1;
                indices[slot] = r as u32;
                values[slot] = self.values[k];
            }
        }
        CsrMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            indptr,
            indices,
            values,
        }
    }

    /// Entrywise complex conjugate.
    pub fn conjugate(&self) -> CsrMatrix {
        let mut out = self.clone();
        for v in &mut out.values {
            *v = v.conj();
        }
        out
    }

    /// Conjugate transpose `A†`.
    pub fn dagger(&self) -> CsrMatrix {
        self.transpose().conjugate()
    }

    /// Largest entry magnitude (max norm); zero for an empty matrix.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Trace (requires a square matrix).
    pub fn trace(&self) -> Scalar {
        debug_assert_eq!(self.nrows, self.ncols);
        (0..self.nrows).map(|r| self.get(r, r)).sum()
    }

    /// Max row sum of entry magnitudes: an upper bound for the spectral
    /// radius of a Hermitian matrix (Gershgorin).
    pub fn norm_inf(&self) -> f64 {
        (0..self.nrows)
            .map(|r| {
                self.values[self.indptr[r]..self.indptr[r + 1]]
                    .iter()
                    .map(|v| v.norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    /// Max-norm of `A - A†`.
    pub fn hermiticity_residual(&self) -> f64 {
        match self.add_scaled(&self.dagger(), Scalar::new(-1.0, 0.0)) {
            Ok(d) => d.max_abs(),
            Err(_) => f64::INFINITY,
        }
    }

    /// Max-norm of `A†A - 1`.
    pub fn unitarity_residual(&self) -> f64 {
        if self.nrows != self.ncols {
            return f64::INFINITY;
        }
        let gram = self
            .dagger()
            .matmul(self)
            .expect("dimensions verified above");
        gram.add_scaled(&CsrMatrix::identity(self.ncols), Scalar::new(-1.0, 0.0))
            .expect("square by construction")
            .max_abs()
    }

    /// Dense copy.
    pub fn to_dense(&self) -> CMat {
        let mut m = CMat::zeros(self.nrows, self.ncols);
        for (r, c, v) in self.iter() {
            m[(r, c)] = v;
        }
        m
    }

    /// Sparse copy of a dense matrix; exact zeros are pruned.
    pub fn from_dense(m: &CMat) -> CsrMatrix {
        let mut triplets = Vec::new();
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let v = m[(r, c)];
                if v.re != 0.0 || v.im != 0.0 {
                    triplets.push((r as u32, c as u32, v));
                }
            }
        }
        CsrMatrix::from_triplets(m.nrows(), m.ncols(), triplets)
            .expect("indices in range by construction")
    }

    /// Sub-block `A[rows, cols]`.
    ///
    /// `rows` and `cols` list the retained indices in output order.
    pub fn select(&self, rows: &[u32], cols: &[u32]) -> Result<CsrMatrix> {
        const UNUSED: u32 = u32::MAX;
        let mut col_map = vec![UNUSED; self.ncols];
        for (new, &old) in cols.iter().enumerate() {
            if old as usize >= self.ncols {
                return Err(PhsymError::invalid(format!(
                    "column {old} outside a {}x{} matrix",
                    self.nrows, self.ncols
                )));
            }
            col_map[old as usize] = new as u32;
        }
        let mut indptr = vec![0usize; rows.len() + 1];
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for (new_r, &old_r) in rows.iter().enumerate() {
            if old_r as usize >= self.nrows {
                return Err(PhsymError::invalid(format!(
                    "row {old_r} outside a {}x{} matrix",
                    self.nrows, self.ncols
                )));
            }
            let mut row_entries: Vec<(u32, Scalar)> = Vec::new();
            for k in self.indptr[old_r as usize]..self.indptr[old_r as usize + 1] {
                let mapped = col_map[self.indices[k] as usize];
                if mapped != UNUSED {
                    row_entries.push((mapped, self.values[k]));
                }
            }
            row_entries.sort_unstable_by_key(|&(c, _)| c);
            for (c, v) in row_entries {
                indices.push(c);
                values.push(v);
            }
            indptr[new_r + 1] = indices.len();
        }
        Ok(CsrMatrix {
            nrows: rows.len(),
            ncols: cols.len(),
            indptr,
            indices,
            values,
        })
    }

    /// True if the matrix has no stored entries.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    #[test]
    fn triplets_merge_and_prune() {
        let m = CsrMatrix::from_triplets(
            3,
            3,
            vec![
                (0, 1, c(1.0, 0.0)),
                (0, 1, c(2.0, 0.0)),
                (2, 0, c(1.0, -1.0)),
                (1, 1, c(0.0, 0.0)),
            ],
        )
        .unwrap();
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(0, 1), c(3.0, 0.0));
        assert_eq!(m.get(2, 0), c(1.0, -1.0));
        assert_eq!(m.get(1, 1), c(0.0, 0.0));
    }

    #[test]
    fn matmul_matches_dense() {
        let a = CsrMatrix::from_triplets(
            2,
            3,
            vec![(0, 0, c(1.0, 1.0)), (0, 2, c(2.0, 0.0)), (1, 1, c(0.0, -1.0))],
        )
        .unwrap();
        let b = CsrMatrix::from_triplets(
            3,
            2,
            vec![(0, 1, c(3.0, 0.0)), (1, 0, c(1.0, 0.0)), (2, 1, c(0.0, 1.0))],
        )
        .unwrap();
        let ab = a.matmul(&b).unwrap();
        let dense = a.to_dense() * b.to_dense();
        assert!((ab.to_dense() - dense).map(|v| v.norm()).max() < 1e-15);
    }

    #[test]
    fn dagger_and_unitarity() {
        // A signed permutation with a phase is unitary.
        let u = CsrMatrix::from_triplets(
            3,
            3,
            vec![(0, 2, c(0.0, 1.0)), (1, 0, c(-1.0, 0.0)), (2, 1, c(1.0, 0.0))],
        )
        .unwrap();
        assert!(u.unitarity_residual() < 1e-15);
        let d = u.dagger();
        assert_eq!(d.get(2, 0), c(0.0, -1.0));
    }

    #[test]
    fn select_extracts_block() {
        let m = CsrMatrix::from_triplets(
            3,
            3,
            vec![(0, 0, c(1.0, 0.0)), (1, 2, c(2.0, 0.0)), (2, 1, c(3.0, 0.0))],
        )
        .unwrap();
        let b = m.select(&[1, 2], &[2, 1]).unwrap();
        assert_eq!(b.get(0, 0), c(2.0, 0.0));
        assert_eq!(b.get(1, 1), c(3.0, 0.0));
        assert_eq!(b.nnz(), 2);
    }

    #[test]
    fn matvec_matches_dense() {
        let a = CsrMatrix::from_triplets(
            2,
            2,
            vec![(0, 0, c(1.0, 0.0)), (0, 1, c(0.0, 1.0)), (1, 0, c(2.0, 0.0))],
        )
        .unwrap();
        let x = vec![c(1.0, 0.0), c(0.0, 1.0)];
        let y = a.matvec(&x);
        assert_eq!(y[0], c(0.0, 0.0));
        assert_eq!(y[1], c(2.0, 0.0));
    }
}
