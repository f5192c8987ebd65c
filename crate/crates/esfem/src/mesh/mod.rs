//! Triangulated moving surfaces: refine-and-project construction, motion
//! along prescribed trajectories, quality metrics, VTK output.

mod motion;
mod vtk;

pub use motion::{lagrangian_advance, move_mesh, MeshMotion};
pub use vtk::write_vtk;

use crate::geometry::LevelSet;
use crate::{Error, Result};
use nalgebra::Vector3;
use std::collections::HashMap;

/// Area threshold below which a triangle counts as degenerate.
pub const DEGENERATE_AREA: f64 = 1e-14;

/// A conforming surface triangulation whose vertices interpolate the
/// moving surface at the stored time. Meshes are immutable snapshots;
/// motion operations return new snapshots with identical connectivity.
#[derive(Clone, Debug)]
pub struct SurfaceMesh {
    positions: Vec<Vector3<f64>>,
    triangles: Vec<[usize; 3]>,
    boundary: Vec<bool>,
    time: f64,
}

impl SurfaceMesh {
    pub fn new(
        positions: Vec<Vector3<f64>>,
        triangles: Vec<[usize; 3]>,
        boundary: Vec<bool>,
        time: f64,
    ) -> Self {
        debug_assert_eq!(positions.len(), boundary.len());
        Self {
            positions,
            triangles,
            boundary,
            time,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn positions(&self) -> &[Vector3<f64>] {
        &self.positions
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn position(&self, j: usize) -> &Vector3<f64> {
        &self.positions[j]
    }

    pub fn is_boundary(&self, j: usize) -> bool {
        self.boundary[j]
    }

    pub fn boundary_flags(&self) -> &[bool] {
        &self.boundary
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    /// Same connectivity, new vertex positions and time.
    pub fn with_positions(&self, positions: Vec<Vector3<f64>>, time: f64) -> Self {
        debug_assert_eq!(positions.len(), self.positions.len());
        Self {
            positions,
            triangles: self.triangles.clone(),
            boundary: self.boundary.clone(),
            time,
        }
    }

    /// Corner positions of triangle `k`.
    pub fn triangle_positions(&self, k: usize) -> [&Vector3<f64>; 3] {
        let [a, b, c] = self.triangles[k];
        [&self.positions[a], &self.positions[b], &self.positions[c]]
    }

    /// Longest edge over all triangles.
    pub fn max_edge_length(&self) -> f64 {
        let mut h: f64 = 0.0;
        for tri in &self.triangles {
            for (a, b) in [(0, 1), (1, 2), (2, 0)] {
                h = h.max((self.positions[tri[a]] - self.positions[tri[b]]).norm());
            }
        }
        h
    }

    /// Sum of triangle areas.
    pub fn total_area(&self) -> f64 {
        (0..self.triangles.len())
            .map(|k| {
                let [p0, p1, p2] = self.triangle_positions(k);
                triangle_area_normal(p0, p1, p2).0
            })
            .sum()
    }
}

/// Area and (non-degenerate) unit normal of a triangle, oriented by the
/// vertex winding.
pub fn triangle_area_normal(
    p0: &Vector3<f64>,
    p1: &Vector3<f64>,
    p2: &Vector3<f64>,
) -> (f64, Vector3<f64>) {
    let cross = (p1 - p0).cross(&(p2 - p0));
    let doubled = cross.norm();
    (0.5 * doubled, cross / doubled)
}

/// Coarse triangulations from which the refine-project construction starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MacroKind {
    /// Regular octahedron; restricted to its upper half (plus the
    /// equatorial boundary) when the surface keeps `x3 >= 0` only.
    Octahedron,
    /// Regular icosahedron.
    Icosahedron,
    /// Triangle fan over the unit disc (8 spokes around the origin).
    DiscFan,
}

fn octahedron_macro(upper_half: bool) -> (Vec<Vector3<f64>>, Vec<[usize; 3]>) {
    let mut positions = vec![
        Vector3::new(1.0, 0.0, 0.0),
        Vector3::new(0.0, 1.0, 0.0),
        Vector3::new(-1.0, 0.0, 0.0),
        Vector3::new(0.0, -1.0, 0.0),
        Vector3::new(0.0, 0.0, 1.0),
    ];
    let mut triangles = vec![[0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4]];
    if !upper_half {
        positions.push(Vector3::new(0.0, 0.0, -1.0));
        triangles.extend_from_slice(&[[1, 0, 5], [2, 1, 5], [3, 2, 5], [0, 3, 5]]);
    }
    (positions, triangles)
}

fn icosahedron_macro() -> (Vec<Vector3<f64>>, Vec<[usize; 3]>) {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let verts = [
        (-1.0, phi, 0.0),
        (1.0, phi, 0.0),
        (-1.0, -phi, 0.0),
        (1.0, -phi, 0.0),
        (0.0, -1.0, phi),
        (0.0, 1.0, phi),
        (0.0, -1.0, -phi),
        (0.0, 1.0, -phi),
        (phi, 0.0, -1.0),
        (phi, 0.0, 1.0),
        (-phi, 0.0, -1.0),
        (-phi, 0.0, 1.0),
    ];
    let positions = verts
        .iter()
        .map(|&(x, y, z)| Vector3::new(x, y, z).normalize())
        .collect();
    let triangles = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    (positions, triangles)
}

fn disc_fan_macro(spokes: usize) -> (Vec<Vector3<f64>>, Vec<[usize; 3]>) {
    let mut positions = vec![Vector3::zeros()];
    for k in 0..spokes {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / spokes as f64;
        positions.push(Vector3::new(phi.cos(), phi.sin(), 0.0));
    }
    let triangles = (0..spokes)
        .map(|k| [0, 1 + k, 1 + (k + 1) % spokes])
        .collect();
    (positions, triangles)
}

/// Boundary flags from edge incidence: an edge belonging to exactly one
/// triangle is a boundary edge, and both its endpoints are boundary
/// vertices.
fn boundary_flags(vertex_count: usize, triangles: &[[usize; 3]]) -> Vec<bool> {
    let mut incidence: HashMap<(usize, usize), usize> = HashMap::new();
    for tri in triangles {
        for (a, b) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])] {
            *incidence.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    let mut flags = vec![false; vertex_count];
    for (&(a, b), &count) in &incidence {
        if count == 1 {
            flags[a] = true;
            flags[b] = true;
        }
    }
    flags
}

/// Build a mesh by refining a macro triangulation `levels` times; each
/// level quadruples the triangles (red refinement) and places the new
/// edge midpoints on the surface. Disc-fan boundary midpoints are
/// normalized onto the unit circle instead.
pub fn refine_project<S: LevelSet + ?Sized>(
    surface: &S,
    kind: MacroKind,
    levels: usize,
    t0: f64,
) -> Result<SurfaceMesh> {
    let (raw_positions, triangles) = match kind {
        MacroKind::Octahedron => octahedron_macro(surface.upper_half_only()),
        MacroKind::Icosahedron => icosahedron_macro(),
        MacroKind::DiscFan => disc_fan_macro(8),
    };
    let boundary = boundary_flags(raw_positions.len(), &triangles);
    let mut positions = Vec::with_capacity(raw_positions.len());
    for (j, p) in raw_positions.iter().enumerate() {
        if kind == MacroKind::DiscFan {
            // Fan vertices already lie on the flat disc / unit circle.
            positions.push(surface.snap(p, t0)?);
        } else if boundary[j] {
            // Half-surface equator vertices: keep them in the boundary
            // plane while projecting (the closed forms already satisfy
            // this; snap guards against future surfaces).
            positions.push(surface.snap(p, t0)?);
        } else {
            positions.push(surface.construction_project(p, t0)?);
        }
    }
    let mut mesh = SurfaceMesh::new(positions, triangles, boundary, t0);
    for _ in 0..levels {
        mesh = refine_once(surface, &mesh, kind)?;
    }
    Ok(mesh)
}

fn refine_once<S: LevelSet + ?Sized>(
    surface: &S,
    mesh: &SurfaceMesh,
    kind: MacroKind,
) -> Result<SurfaceMesh> {
    let t = mesh.time;
    let mut positions = mesh.positions.clone();
    let mut boundary = mesh.boundary.clone();
    let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
    let edge_is_boundary = {
        let mut incidence: HashMap<(usize, usize), usize> = HashMap::new();
        for tri in &mesh.triangles {
            for (a, b) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])] {
                *incidence.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        incidence
    };

    let mut midpoint = |a: usize,
                        b: usize,
                        positions: &mut Vec<Vector3<f64>>,
                        boundary: &mut Vec<bool>|
     -> Result<usize> {
        let key = (a.min(b), a.max(b));
        if let Some(&idx) = midpoints.get(&key) {
            return Ok(idx);
        }
        let on_boundary = edge_is_boundary.get(&key) == Some(&1);
        let mid = 0.5 * (positions[a] + positions[b]);
        let projected = if kind == MacroKind::DiscFan && on_boundary {
            let r = mid.xy().norm();
            Vector3::new(mid.x / r, mid.y / r, 0.0)
        } else {
            surface.construction_project(&mid, t)?
        };
        positions.push(projected);
        boundary.push(on_boundary);
        let idx = positions.len() - 1;
        midpoints.insert(key, idx);
        Ok(idx)
    };

    let mut triangles = Vec::with_capacity(4 * mesh.triangles.len());
    for tri in &mesh.triangles {
        let [a, b, c] = *tri;
        let ab = midpoint(a, b, &mut positions, &mut boundary)?;
        let bc = midpoint(b, c, &mut positions, &mut boundary)?;
        let ca = midpoint(c, a, &mut positions, &mut boundary)?;
        triangles.push([a, ab, ca]);
        triangles.push([b, bc, ab]);
        triangles.push([c, ca, bc]);
        triangles.push([ab, bc, ca]);
    }
    Ok(SurfaceMesh::new(positions, triangles, boundary, t))
}

/// Per-mesh quality summary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QualityReport {
    pub time: f64,
    /// Maximum edge length.
    pub h: f64,
    /// Smallest interior angle over all triangles, in degrees.
    pub min_angle_deg: f64,
    /// Largest ratio of circumradius to twice the inradius (1 for an
    /// equilateral triangle).
    pub max_aspect: f64,
    pub min_area: f64,
    pub max_area: f64,
}

/// Exact per-triangle angle, aspect and area extrema.
pub fn quality_metrics(mesh: &SurfaceMesh) -> Result<QualityReport> {
    let mut h: f64 = 0.0;
    let mut min_angle = f64::INFINITY;
    let mut max_aspect: f64 = 0.0;
    let mut min_area = f64::INFINITY;
    let mut max_area: f64 = 0.0;
    for (k, _) in mesh.triangles.iter().enumerate() {
        let [p0, p1, p2] = mesh.triangle_positions(k);
        let (area, _) = triangle_area_normal(p0, p1, p2);
        if !(area > DEGENERATE_AREA) {
            return Err(Error::DegenerateTriangle { triangle: k, area });
        }
        min_area = min_area.min(area);
        max_area = max_area.max(area);
        let edges = [(p1 - p0).norm(), (p2 - p1).norm(), (p0 - p2).norm()];
        let (a, b, c) = (edges[0], edges[1], edges[2]);
        h = h.max(a).max(b).max(c);
        // Angle at each corner by the law of cosines.
        for (opposite, e1, e2) in [(b, c, a), (c, a, b), (a, b, c)] {
            let cos =
                ((e1 * e1 + e2 * e2 - opposite * opposite) / (2.0 * e1 * e2)).clamp(-1.0, 1.0);
            min_angle = min_angle.min(cos.acos());
        }
        let circumradius = a * b * c / (4.0 * area);
        let inradius = area / (0.5 * (a + b + c));
        max_aspect = max_aspect.max(circumradius / (2.0 * inradius));
    }
    Ok(QualityReport {
        time: mesh.time,
        h,
        min_angle_deg: min_angle.to_degrees(),
        max_aspect,
        min_area,
        max_area,
    })
}
