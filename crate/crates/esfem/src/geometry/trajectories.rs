//! Closed-form ALE node trajectories.
//!
//! Both shipped ALE motions are coordinatewise scalings, so a node can be
//! mapped between any two times directly; the zero level-set residual
//! cancels algebraically along the way.

use super::{Hemiellipsoid, PulsatingSextic};
use nalgebra::Vector3;

/// Hemiellipsoid ALE trajectory from the initial surface:
/// `x(t) = (x0_1 sqrt(a(t)), x0_2, x0_3)` with `a(0) = 1`.
pub fn hemiellipsoid_ale_position(x0: &Vector3<f64>, t: f64) -> Vector3<f64> {
    hemiellipsoid_ale_map(x0, 0.0, t)
}

/// Map a point on the hemiellipsoid at time `from` to its trajectory
/// position at time `to`.
pub fn hemiellipsoid_ale_map(x: &Vector3<f64>, from: f64, to: f64) -> Vector3<f64> {
    let scale = (Hemiellipsoid::axis(to) / Hemiellipsoid::axis(from)).sqrt();
    Vector3::new(x.x * scale, x.y, x.z)
}

/// Pulsating-sextic ALE trajectory from the initial surface: coordinates
/// scaled by `(a(t)/a(0), 1, L(t)/L(0))`.
pub fn pulsating_ale_position(x0: &Vector3<f64>, t: f64) -> Vector3<f64> {
    pulsating_ale_map(x0, 0.0, t)
}

/// Map a point on the pulsating sextic at time `from` to time `to`.
pub fn pulsating_ale_map(x: &Vector3<f64>, from: f64, to: f64) -> Vector3<f64> {
    Vector3::new(
        x.x * (PulsatingSextic::axis_a(to) / PulsatingSextic::axis_a(from)),
        x.y,
        x.z * (PulsatingSextic::axis_l(to) / PulsatingSextic::axis_l(from)),
    )
}
