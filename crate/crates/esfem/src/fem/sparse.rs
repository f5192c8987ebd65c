//! Compressed-sparse-row matrices over a fixed symbolic pattern.
//!
//! The sparsity pattern (vertex adjacency) depends only on the mesh
//! connectivity, which never changes during a run, so it is computed once
//! and shared; per-timestep assembly only refills the numeric values.

use crate::Result;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

/// Symbolic CSR structure with sorted column indices per row.
#[derive(Debug, PartialEq, Eq)]
pub struct SparsityPattern {
    dim: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
}

impl SparsityPattern {
    /// Vertex-adjacency pattern of a triangulation (including the
    /// diagonal).
    pub fn from_triangles(dim: usize, triangles: &[[usize; 3]]) -> Arc<Self> {
        let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); dim];
        for (j, row) in neighbors.iter_mut().enumerate() {
            row.push(j);
        }
        for tri in triangles {
            for &a in tri {
                for &b in tri {
                    if a != b {
                        neighbors[a].push(b);
                    }
                }
            }
        }
        let mut row_offsets = Vec::with_capacity(dim + 1);
        let mut col_indices = Vec::new();
        row_offsets.push(0);
        for row in &mut neighbors {
            row.sort_unstable();
            row.dedup();
            col_indices.extend_from_slice(row);
            row_offsets.push(col_indices.len());
        }
        Arc::new(Self {
            dim,
            row_offsets,
            col_indices,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.col_indices.len()
    }

    pub fn row_cols(&self, i: usize) -> &[usize] {
        &self.col_indices[self.row_offsets[i]..self.row_offsets[i + 1]]
    }

    /// Storage slot of entry (i, j), if present.
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        let start = self.row_offsets[i];
        self.row_cols(i)
            .binary_search(&j)
            .ok()
            .map(|offset| start + offset)
    }
}

/// A CSR matrix sharing its pattern with other matrices of the same
/// connectivity.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    pattern: Arc<SparsityPattern>,
    values: Vec<f64>,
}

impl SparseMatrix {
    pub fn zeros(pattern: Arc<SparsityPattern>) -> Self {
        let nnz = pattern.nnz();
        Self {
            pattern,
            values: vec![0.0; nnz],
        }
    }

    pub fn dim(&self) -> usize {
        self.pattern.dim
    }

    pub fn pattern(&self) -> &Arc<SparsityPattern> {
        &self.pattern
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Accumulate into entry (i, j). Panics if the entry is outside the
    /// pattern, which would be an assembly bug.
    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        let slot = self
            .pattern
            .index_of(i, j)
            .unwrap_or_else(|| panic!("entry ({i},{j}) outside sparsity pattern"));
        self.values[slot] += value;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.pattern
            .index_of(i, j)
            .map_or(0.0, |slot| self.values[slot])
    }

    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let range = self.pattern.row_offsets[i]..self.pattern.row_offsets[i + 1];
        (
            &self.pattern.col_indices[range.clone()],
            &self.values[range],
        )
    }

    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(y.len(), self.dim());
        for i in 0..self.dim() {
            let (cols, vals) = self.row(i);
            let mut acc = 0.0;
            for (&j, &v) in cols.iter().zip(vals) {
                acc += v * x[j];
            }
            y[i] = acc;
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim()];
        self.mul_vec(x, &mut y);
        y
    }

    /// y = A^T x without forming the transpose.
    pub fn apply_transpose(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim()];
        for i in 0..self.dim() {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                y[j] += v * x[i];
            }
        }
        y
    }

    /// Transposed copy on the same (symmetric) pattern.
    pub fn transpose(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.pattern.clone());
        for i in 0..self.dim() {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                let slot = self
                    .pattern
                    .index_of(j, i)
                    .expect("adjacency pattern is symmetric");
                out.values[slot] = v;
            }
        }
        out
    }

    /// In-place `self += scale * other` (same shared pattern required).
    pub fn axpy(&mut self, scale: f64, other: &SparseMatrix) {
        assert!(Arc::ptr_eq(&self.pattern, &other.pattern));
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += scale * b;
        }
    }

    pub fn scale(&mut self, factor: f64) {
        for v in &mut self.values {
            *v *= factor;
        }
    }

    /// max_ij |A - A^T| over the pattern.
    pub fn symmetry_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        for i in 0..self.dim() {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                defect = defect.max((v - self.get(j, i)).abs());
            }
        }
        defect
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.get(i, i)).collect()
    }

    /// Dense copy, for small oracle solves in tests.
    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut dense = nalgebra::DMatrix::zeros(self.dim(), self.dim());
        for i in 0..self.dim() {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                dense[(i, j)] = v;
            }
        }
        dense
    }

    /// Matrix Market coordinate-format dump (1-based indices).
    pub fn write_matrix_market(&self, path: &Path) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "%%MatrixMarket matrix coordinate real general")?;
        writeln!(out, "{} {} {}", self.dim(), self.dim(), self.pattern.nnz())?;
        for i in 0..self.dim() {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                writeln!(out, "{} {} {:.17e}", i + 1, j + 1, v)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_pattern() -> Arc<SparsityPattern> {
        // Two triangles sharing an edge: (0,1,2), (2,1,3).
        SparsityPattern::from_triangles(4, &[[0, 1, 2], [2, 1, 3]])
    }

    #[test]
    fn pattern_is_vertex_adjacency() {
        let p = small_pattern();
        assert_eq!(p.row_cols(0), &[0, 1, 2]);
        assert_eq!(p.row_cols(1), &[0, 1, 2, 3]);
        assert_eq!(p.row_cols(2), &[0, 1, 2, 3]);
        assert_eq!(p.row_cols(3), &[1, 2, 3]);
        assert_eq!(p.index_of(0, 3), None);
    }

    #[test]
    fn matvec_and_transpose_agree_with_dense() {
        let p = small_pattern();
        let mut a = SparseMatrix::zeros(p);
        a.add(0, 1, 2.0);
        a.add(1, 0, -1.0);
        a.add(2, 3, 0.5);
        a.add(3, 3, 4.0);
        let x = vec![1.0, 2.0, 3.0, 4.0];
        let dense = a.to_dense();
        let xd = nalgebra::DVector::from_vec(x.clone());
        let yd = &dense * &xd;
        let y = a.apply(&x);
        for i in 0..4 {
            assert!((y[i] - yd[i]).abs() < 1e-15);
        }
        let ytd = dense.transpose() * &xd;
        let yt = a.apply_transpose(&x);
        let yt2 = a.transpose().apply(&x);
        for i in 0..4 {
            assert!((yt[i] - ytd[i]).abs() < 1e-15);
            assert!((yt2[i] - ytd[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn transpose_is_an_involution_on_random_matrices() {
        use proptest::prelude::*;
        let pattern = small_pattern();
        proptest!(|(values in proptest::collection::vec(-10.0..10.0f64, 14),
                    x in proptest::collection::vec(-1.0..1.0f64, 4))| {
            let mut a = SparseMatrix::zeros(pattern.clone());
            a.values_mut().copy_from_slice(&values);
            let att = a.transpose().transpose();
            prop_assert_eq!(a.values(), att.values());
            let via_transpose = a.transpose().apply(&x);
            let direct = a.apply_transpose(&x);
            for (p, q) in via_transpose.iter().zip(&direct) {
                prop_assert!((p - q).abs() < 1e-14);
            }
        });
    }

    #[test]
    fn matrix_market_roundtrip_layout() {
        let p = small_pattern();
        let mut a = SparseMatrix::zeros(p);
        a.add(0, 0, 1.5);
        let dir = std::env::temp_dir().join("esfem_mm_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("a.mtx");
        a.write_matrix_market(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("%%MatrixMarket matrix coordinate real general"));
        assert!(text.lines().nth(1).unwrap().starts_with("4 4"));
        std::fs::remove_dir_all(&dir).ok();
    }
}
