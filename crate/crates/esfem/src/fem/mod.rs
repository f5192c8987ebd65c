//! P1 finite element assembly on the current triangulated surface.
//!
//! Basis gradients are constant per element, so mass, stiffness and
//! advection matrices use exact per-element formulas; load vectors use a
//! configurable quadrature rule (degree 6 by default) with quadrature
//! points lifted onto the smooth surface by closest-point projection.

mod quadrature;
mod sparse;

pub use quadrature::TriangleQuadrature;
pub use sparse::{SparseMatrix, SparsityPattern};

use crate::geometry::{lift_point, LevelSet};
use crate::mesh::{triangle_area_normal, SurfaceMesh, DEGENERATE_AREA};
use crate::{Error, Result};
use nalgebra::Vector3;
use std::sync::Arc;

/// Default quadrature degree for load vectors and error norms.
pub const DEFAULT_QUADRATURE_DEGREE: usize = 6;

/// Per-element geometry: area, unit normal, constant P1 basis gradients.
pub struct ElementGeometry {
    pub area: f64,
    pub normal: Vector3<f64>,
    pub basis_gradients: [Vector3<f64>; 3],
}

/// Compute the element geometry of triangle `k`.
///
/// The first basis gradient is formed as the negated sum of the other
/// two, so basis gradients sum to zero to the last bit and constants lie
/// in the kernel of the assembled stiffness and advection matrices.
pub fn element_geometry(mesh: &SurfaceMesh, k: usize) -> Result<ElementGeometry> {
    let [p0, p1, p2] = mesh.triangle_positions(k);
    let (area, normal) = triangle_area_normal(p0, p1, p2);
    if !(area > DEGENERATE_AREA) {
        return Err(Error::DegenerateTriangle { triangle: k, area });
    }
    let scale = 1.0 / (2.0 * area);
    let g1 = normal.cross(&(p0 - p2)) * scale;
    let g2 = normal.cross(&(p1 - p0)) * scale;
    let g0 = -(g1 + g2);
    Ok(ElementGeometry {
        area,
        normal,
        basis_gradients: [g0, g1, g2],
    })
}

/// Shared sparsity pattern of all matrices on this connectivity.
pub fn pattern_of(mesh: &SurfaceMesh) -> Arc<SparsityPattern> {
    SparsityPattern::from_triangles(mesh.vertex_count(), mesh.triangles())
}

const MASS_COEFF: [[f64; 3]; 3] = [[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 2.0]];

/// Mass matrix `M_ij = integral chi_i chi_j` (exact per element).
pub fn assemble_mass(mesh: &SurfaceMesh, pattern: &Arc<SparsityPattern>) -> Result<SparseMatrix> {
    let mut m = SparseMatrix::zeros(pattern.clone());
    for (k, tri) in mesh.triangles().iter().enumerate() {
        let geo = element_geometry(mesh, k)?;
        let w = geo.area / 12.0;
        for i in 0..3 {
            for j in 0..3 {
                m.add(tri[i], tri[j], w * MASS_COEFF[i][j]);
            }
        }
    }
    Ok(m)
}

/// Stiffness matrix `S_ij = integral grad_S chi_i . grad_S chi_j`
/// (gradients are elementwise constant, so the one-point rule is exact).
pub fn assemble_stiffness(
    mesh: &SurfaceMesh,
    pattern: &Arc<SparsityPattern>,
) -> Result<SparseMatrix> {
    let mut s = SparseMatrix::zeros(pattern.clone());
    for (k, tri) in mesh.triangles().iter().enumerate() {
        let geo = element_geometry(mesh, k)?;
        for i in 0..3 {
            for j in 0..3 {
                s.add(
                    tri[i],
                    tri[j],
                    geo.area * geo.basis_gradients[i].dot(&geo.basis_gradients[j]),
                );
            }
        }
    }
    Ok(s)
}

/// Advection matrix `B_ij = integral chi_i W_h . grad_S chi_j` with `W_h`
/// the P1 interpolant of the given nodal velocity (exact: the integrand
/// is quadratic).
pub fn assemble_advection(
    mesh: &SurfaceMesh,
    pattern: &Arc<SparsityPattern>,
    nodal_velocity: &[Vector3<f64>],
) -> Result<SparseMatrix> {
    debug_assert_eq!(nodal_velocity.len(), mesh.vertex_count());
    let mut b = SparseMatrix::zeros(pattern.clone());
    for (k, tri) in mesh.triangles().iter().enumerate() {
        let geo = element_geometry(mesh, k)?;
        let w = geo.area / 12.0;
        for j in 0..3 {
            let gj = geo.basis_gradients[j];
            for i in 0..3 {
                // integral chi_i (sum_k W_k chi_k) . grad chi_j
                //   = sum_k (W_k . grad chi_j) M^el_ik
                let mut acc = 0.0;
                for (l, node) in tri.iter().enumerate() {
                    acc += MASS_COEFF[i][l] * nodal_velocity[*node].dot(&gj);
                }
                b.add(tri[i], tri[j], w * acc);
            }
        }
    }
    Ok(b)
}

/// Weighted mass matrix `G_ij = integral chi_i chi_j div_S W_h` with the
/// elementwise-constant divergence of the P1 velocity interpolant.
pub fn assemble_weighted_mass(
    mesh: &SurfaceMesh,
    pattern: &Arc<SparsityPattern>,
    nodal_velocity: &[Vector3<f64>],
) -> Result<SparseMatrix> {
    debug_assert_eq!(nodal_velocity.len(), mesh.vertex_count());
    let mut g = SparseMatrix::zeros(pattern.clone());
    for (k, tri) in mesh.triangles().iter().enumerate() {
        let geo = element_geometry(mesh, k)?;
        let div: f64 = (0..3)
            .map(|l| nodal_velocity[tri[l]].dot(&geo.basis_gradients[l]))
            .sum();
        let w = geo.area / 12.0 * div;
        for i in 0..3 {
            for j in 0..3 {
                g.add(tri[i], tri[j], w * MASS_COEFF[i][j]);
            }
        }
    }
    Ok(g)
}

/// Load vector `F_i = integral f(p(x_q), t) chi_i` with quadrature points
/// lifted onto the smooth surface through the closest-point projection.
pub fn assemble_load<S, F>(
    mesh: &SurfaceMesh,
    surface: &S,
    f: F,
    t: f64,
    rule: &TriangleQuadrature,
) -> Result<Vec<f64>>
where
    S: LevelSet + ?Sized,
    F: Fn(&Vector3<f64>, f64) -> Result<f64>,
{
    let mut load = vec![0.0; mesh.vertex_count()];
    for (k, tri) in mesh.triangles().iter().enumerate() {
        let geo = element_geometry(mesh, k)?;
        let [p0, p1, p2] = mesh.triangle_positions(k);
        for (bary, &w) in rule.points.iter().zip(&rule.weights) {
            let xq = bary[0] * p0 + bary[1] * p1 + bary[2] * p2;
            let lifted = lift_point(surface, &xq, t)?;
            let value = f(&lifted, t)? * geo.area * w;
            for (l, node) in tri.iter().enumerate() {
                load[*node] += value * bary[l];
            }
        }
    }
    Ok(load)
}

/// Nodal interpolation `U_j = f(X_j, t)`.
pub fn interpolate_nodal<F>(mesh: &SurfaceMesh, f: F, t: f64) -> Vec<f64>
where
    F: Fn(&Vector3<f64>, f64) -> f64,
{
    mesh.positions().iter().map(|p| f(p, t)).collect()
}

/// Discrete mass `1^T M U` of a coefficient vector.
pub fn discrete_mass(mass: &SparseMatrix, u: &[f64]) -> f64 {
    mass.apply(u).iter().sum()
}

/// L2(Gamma_h) norm `sqrt(U^T M U)`.
pub fn l2_norm(mass: &SparseMatrix, u: &[f64]) -> f64 {
    let mu = mass.apply(u);
    u.iter().zip(&mu).map(|(a, b)| a * b).sum::<f64>().sqrt()
}
