//! Mesh motion: closed-form node trajectories and ODE-advanced nodes.

use super::SurfaceMesh;
use crate::geometry::{
    hemiellipsoid_ale_map, pulsating_ale_map, LevelSet, OscillatingDome, VelocityField,
};
use crate::{Error, Result};
use nalgebra::Vector3;
use std::sync::Arc;

/// How mesh vertices move in time.
#[derive(Clone)]
pub enum MeshMotion {
    /// Vertices do not move.
    Stationary,
    /// Hemiellipsoid ALE scaling `x1 -> x1 sqrt(a(t)/a(s))`.
    HemiellipsoidAle,
    /// Pulsating-sextic ALE scaling by `(a(t)/a(s), 1, L(t)/L(s))`.
    PulsatingAle,
    /// Graph vertices keep their horizontal position; `x3 = z(theta, t)`.
    GraphVertical(OscillatingDome),
    /// Vertices follow `dX/dt = v(X, t)` integrated per step by RK4 with
    /// the given number of substeps, then projected back to the surface.
    NodalOde {
        velocity: VelocityField,
        surface: Arc<dyn LevelSet>,
        substeps: usize,
    },
}

impl MeshMotion {
    pub fn is_closed_form(&self) -> bool {
        !matches!(self, MeshMotion::NodalOde { .. })
    }

    /// The ambient velocity field the vertices follow.
    pub fn velocity_field(&self) -> VelocityField {
        match self {
            MeshMotion::Stationary => VelocityField::Zero,
            MeshMotion::HemiellipsoidAle => VelocityField::HemiellipsoidAle,
            MeshMotion::PulsatingAle => VelocityField::PulsatingAle,
            MeshMotion::GraphVertical(dome) => VelocityField::GraphVertical(*dome),
            MeshMotion::NodalOde { velocity, .. } => velocity.clone(),
        }
    }

    /// Advance to time `t1`. Closed-form motions map the *initial* mesh
    /// directly (no per-step error accumulation); the ODE motion advances
    /// the current mesh by one step.
    pub fn advance(
        &self,
        initial: &SurfaceMesh,
        current: &SurfaceMesh,
        t1: f64,
    ) -> Result<SurfaceMesh> {
        match self {
            MeshMotion::NodalOde {
                velocity,
                surface,
                substeps,
            } => lagrangian_advance(
                current,
                velocity,
                surface.as_ref(),
                current.time(),
                t1,
                *substeps,
            ),
            _ => move_mesh(initial, self, t1),
        }
    }
}

/// Map every vertex of a closed-form motion to time `t`. Fails with
/// [`Error::WrongMotionKind`] for the nodal-ODE motion.
pub fn move_mesh(mesh: &SurfaceMesh, motion: &MeshMotion, t: f64) -> Result<SurfaceMesh> {
    let s = mesh.time();
    let positions = match motion {
        MeshMotion::Stationary => mesh.positions().to_vec(),
        MeshMotion::HemiellipsoidAle => mesh
            .positions()
            .iter()
            .map(|p| hemiellipsoid_ale_map(p, s, t))
            .collect(),
        MeshMotion::PulsatingAle => mesh
            .positions()
            .iter()
            .map(|p| pulsating_ale_map(p, s, t))
            .collect(),
        MeshMotion::GraphVertical(dome) => mesh
            .positions()
            .iter()
            .map(|p| Vector3::new(p.x, p.y, dome.height(&p.xy(), t)))
            .collect(),
        MeshMotion::NodalOde { .. } => return Err(Error::WrongMotionKind),
    };
    Ok(mesh.with_positions(positions, t))
}

/// One classical RK4 trajectory from `t0` to `t1` in `substeps` pieces,
/// without any projection.
pub(crate) fn rk4_path<W: crate::geometry::Velocity + ?Sized>(
    velocity: &W,
    x0: &Vector3<f64>,
    t0: f64,
    t1: f64,
    substeps: usize,
) -> Result<Vector3<f64>> {
    let n = substeps.max(1);
    let h = (t1 - t0) / n as f64;
    let mut x = *x0;
    for k in 0..n {
        let t = t0 + k as f64 * h;
        let k1 = velocity.eval(&x, t)?;
        let k2 = velocity.eval(&(x + 0.5 * h * k1), t + 0.5 * h)?;
        let k3 = velocity.eval(&(x + 0.5 * h * k2), t + 0.5 * h)?;
        let k4 = velocity.eval(&(x + h * k3), t + h)?;
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    Ok(x)
}

/// Advance every vertex along the velocity field by RK4 and project the
/// endpoint back onto the surface at `t1`.
pub fn lagrangian_advance(
    mesh: &SurfaceMesh,
    velocity: &VelocityField,
    surface: &dyn LevelSet,
    t0: f64,
    t1: f64,
    substeps: usize,
) -> Result<SurfaceMesh> {
    debug_assert!((mesh.time() - t0).abs() < 1e-12);
    let snap_boundary_plane = surface.upper_half_only();
    let mut positions = Vec::with_capacity(mesh.vertex_count());
    for (j, p) in mesh.positions().iter().enumerate() {
        let mut x = rk4_path(velocity, p, t0, t1, substeps)?;
        if snap_boundary_plane && mesh.is_boundary(j) {
            // Boundary nodes of the half surface stay in the plane x3 = 0
            // analytically; pin them there against rounding drift.
            x.z = 0.0;
        }
        let mut projected = surface.snap(&x, t1)?;
        if snap_boundary_plane && mesh.is_boundary(j) {
            projected.z = 0.0;
        }
        positions.push(projected);
    }
    Ok(mesh.with_positions(positions, t1))
}
