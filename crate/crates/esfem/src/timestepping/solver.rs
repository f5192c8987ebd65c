//! Linear-solver backends behind a common contract: the returned vector
//! satisfies `||Ax - b|| <= tol ||b||`, and scheme code never depends on
//! which backend produced it.

use crate::fem::SparseMatrix;
use crate::{Error, Result};
use faer::prelude::*;
use faer::sparse::linalg::solvers::Lu;
use faer::sparse::{SparseColMat, Triplet};
use std::sync::Once;

/// Problems at or below this size use the direct backend when the solver
/// kind is `Auto`.
pub const DIRECT_SIZE_LIMIT: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverKind {
    /// Direct for small systems, iterative beyond [`DIRECT_SIZE_LIMIT`].
    Auto,
    /// Sparse LU factorization.
    Direct,
    /// Jacobi-preconditioned BiCGStab.
    BiCgStab,
}

#[derive(Clone, Copy, Debug)]
pub struct SolverConfig {
    pub kind: SolverKind,
    /// Relative residual tolerance.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            kind: SolverKind::Auto,
            tol: 1e-10,
            max_iter: 2000,
        }
    }
}

static SINGLE_THREADED: Once = Once::new();

fn ensure_sequential() {
    // Factorizations must be bit-reproducible run to run.
    SINGLE_THREADED.call_once(|| {
        faer::set_global_parallelism(faer::Par::Seq);
    });
}

/// A sparse LU factorization reusable across solves with the same matrix
/// (stationary-mesh runs factor once).
pub struct DirectFactor {
    lu: Lu<usize, f64>,
    dim: usize,
}

impl DirectFactor {
    pub fn new(a: &SparseMatrix) -> Result<Self> {
        ensure_sequential();
        let n = a.dim();
        let mut triplets = Vec::with_capacity(a.values().len());
        for i in 0..n {
            let (cols, vals) = a.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                triplets.push(Triplet::new(i, j, v));
            }
        }
        let mat = SparseColMat::try_new_from_triplets(n, n, &triplets)
            .map_err(|e| Error::SolverDiverged(format!("sparse assembly failed: {e:?}")))?;
        let lu = mat
            .sp_lu()
            .map_err(|e| Error::SolverDiverged(format!("LU factorization failed: {e:?}")))?;
        Ok(Self { lu, dim: n })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        debug_assert_eq!(b.len(), self.dim);
        let rhs = Mat::from_fn(self.dim, 1, |i, _| b[i]);
        let x = self.lu.solve(&rhs);
        (0..self.dim).map(|i| x[(i, 0)]).collect()
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn residual_norm(a: &SparseMatrix, x: &[f64], b: &[f64]) -> f64 {
    let ax = a.apply(x);
    ax.iter()
        .zip(b)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt()
}

/// Solve `Ax = b` to the configured relative residual.
pub fn solve_linear(a: &SparseMatrix, b: &[f64], config: &SolverConfig) -> Result<Vec<f64>> {
    let b_norm = norm(b);
    if b_norm == 0.0 {
        return Ok(vec![0.0; a.dim()]);
    }
    let direct = match config.kind {
        SolverKind::Direct => true,
        SolverKind::BiCgStab => false,
        SolverKind::Auto => a.dim() <= DIRECT_SIZE_LIMIT,
    };
    let x = if direct {
        DirectFactor::new(a)?.solve(b)
    } else {
        bicgstab(a, b, config.tol, config.max_iter)?
    };
    let rel = residual_norm(a, &x, b) / b_norm;
    if !rel.is_finite() || rel > config.tol.max(1e-12) {
        return Err(Error::SolverDiverged(format!(
            "relative residual {rel:.3e} above tolerance {:.3e}",
            config.tol
        )));
    }
    Ok(x)
}

/// Jacobi-preconditioned BiCGStab.
fn bicgstab(a: &SparseMatrix, b: &[f64], tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    let n = a.dim();
    let inv_diag: Vec<f64> = a
        .diagonal()
        .iter()
        .map(|&d| if d.abs() > 0.0 { 1.0 / d } else { 1.0 })
        .collect();
    let precondition =
        |v: &[f64]| -> Vec<f64> { v.iter().zip(&inv_diag).map(|(x, d)| x * d).collect() };

    let b_norm = norm(b);
    let target = tol * b_norm;
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let r_shadow = r.clone();
    let mut rho = 1.0;
    let mut alpha = 1.0;
    let mut omega = 1.0;
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();

    for _ in 0..max_iter {
        let rho_next = dot(&r_shadow, &r);
        if rho_next.abs() < 1e-300 {
            return Err(Error::SolverDiverged("BiCGStab breakdown (rho)".into()));
        }
        let beta = (rho_next / rho) * (alpha / omega);
        for i in 0..n {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        let p_hat = precondition(&p);
        v = a.apply(&p_hat);
        let denom = dot(&r_shadow, &v);
        if denom.abs() < 1e-300 {
            return Err(Error::SolverDiverged("BiCGStab breakdown (alpha)".into()));
        }
        alpha = rho_next / denom;
        let s: Vec<f64> = r.iter().zip(&v).map(|(ri, vi)| ri - alpha * vi).collect();
        if norm(&s) <= target {
            for i in 0..n {
                x[i] += alpha * p_hat[i];
            }
            return Ok(x);
        }
        let s_hat = precondition(&s);
        let t = a.apply(&s_hat);
        let tt = dot(&t, &t);
        if tt.abs() < 1e-300 {
            return Err(Error::SolverDiverged("BiCGStab breakdown (omega)".into()));
        }
        omega = dot(&t, &s) / tt;
        for i in 0..n {
            x[i] += alpha * p_hat[i] + omega * s_hat[i];
            r[i] = s[i] - omega * t[i];
        }
        if norm(&r) <= target {
            return Ok(x);
        }
        rho = rho_next;
    }
    Err(Error::SolverDiverged(format!(
        "BiCGStab: no convergence in {max_iter} iterations"
    )))
}
