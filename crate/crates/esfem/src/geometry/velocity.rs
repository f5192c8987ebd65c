//! Velocity fields driving surface material transport and mesh motion.

use super::{normal_velocity, LevelSet, OscillatingDome};
use super::{Hemiellipsoid, PulsatingSextic};
use crate::Result;
use nalgebra::{Matrix3, Vector3};
use std::sync::Arc;

/// Anything that can be evaluated as an ambient velocity `(x, t) -> R^3`.
pub trait Velocity: Send + Sync {
    fn eval(&self, x: &Vector3<f64>, t: f64) -> Result<Vector3<f64>>;
}

impl<F> Velocity for F
where
    F: Fn(&Vector3<f64>, f64) -> Vector3<f64> + Send + Sync,
{
    fn eval(&self, x: &Vector3<f64>, t: f64) -> Result<Vector3<f64>> {
        Ok(self(x, t))
    }
}

/// The velocity fields used by the shipped experiments.
#[derive(Clone)]
pub enum VelocityField {
    /// Identically zero.
    Zero,
    /// Normal velocity `(-d_t/|grad d|) grad d/|grad d|` of a level set.
    LevelSetNormal(Arc<dyn LevelSet>),
    /// Closed-form ALE velocity of the hemiellipsoid: trajectories
    /// `x1(t) = x1(0) sqrt(a(t))` give `v = (a'(t) x1 / (2 a(t)), 0, 0)`.
    HemiellipsoidAle,
    /// Closed-form ALE velocity of the pulsating sextic: coordinatewise
    /// scaling by `(a(t)/a(0), 1, L(t)/L(0))` gives
    /// `v = (a'/a x1, 0, L'/L x3)`.
    PulsatingAle,
    /// Vertical ALE velocity `(0, 0, z_t)` of the graph surface.
    GraphVertical(OscillatingDome),
}

impl VelocityField {
    /// Normal velocity of the oscillating dome graph.
    pub fn graph_normal() -> Self {
        VelocityField::LevelSetNormal(Arc::new(OscillatingDome))
    }

    pub fn eval(&self, x: &Vector3<f64>, t: f64) -> Result<Vector3<f64>> {
        match self {
            VelocityField::Zero => Ok(Vector3::zeros()),
            VelocityField::LevelSetNormal(surface) => normal_velocity(surface.as_ref(), x, t),
            VelocityField::HemiellipsoidAle => {
                let a = Hemiellipsoid::axis(t);
                let rate = Hemiellipsoid::axis_rate(t);
                Ok(Vector3::new(rate * x.x / (2.0 * a), 0.0, 0.0))
            }
            VelocityField::PulsatingAle => {
                let a = PulsatingSextic::axis_a(t);
                let l = PulsatingSextic::axis_l(t);
                Ok(Vector3::new(
                    PulsatingSextic::axis_a_rate(t) / a * x.x,
                    0.0,
                    PulsatingSextic::axis_l_rate(t) / l * x.z,
                ))
            }
            VelocityField::GraphVertical(dome) => {
                Ok(Vector3::new(0.0, 0.0, dome.height_time_deriv(&x.xy(), t)))
            }
        }
    }
}

impl Velocity for VelocityField {
    fn eval(&self, x: &Vector3<f64>, t: f64) -> Result<Vector3<f64>> {
        VelocityField::eval(self, x, t)
    }
}

/// Central-difference Jacobian of a velocity field.
pub(super) fn jacobian_fd<W: Velocity + ?Sized>(
    w: &W,
    x: &Vector3<f64>,
    t: f64,
    step: f64,
) -> Result<Matrix3<f64>> {
    let mut jac = Matrix3::zeros();
    for j in 0..3 {
        let mut xp = *x;
        let mut xm = *x;
        xp[j] += step;
        xm[j] -= step;
        let wp = w.eval(&xp, t)?;
        let wm = w.eval(&xm, t)?;
        for i in 0..3 {
            jac[(i, j)] = (wp[i] - wm[i]) / (2.0 * step);
        }
    }
    Ok(jac)
}
