//! Moving graph surface over the unit disc.

use super::LevelSet;
use crate::Result;
use nalgebra::{Matrix3, Vector2, Vector3};
use std::f64::consts::PI;

/// Graph `x3 = z(theta, t)` over the unit disc with
/// `z(theta, t) = 2 sin(2 pi t) (1 - |theta|^2)`; the boundary circle
/// `|theta| = 1` is fixed (`z = 0` there for all `t`).
///
/// Implemented as the level set `phi(x, t) = x3 - z(x1, x2, t)`, so the
/// generic surface calculus applies; the snap used after ODE node
/// advancement is the exact vertical one.
#[derive(Clone, Copy, Debug, Default)]
pub struct OscillatingDome;

impl OscillatingDome {
    pub fn height(&self, theta: &Vector2<f64>, t: f64) -> f64 {
        2.0 * (2.0 * PI * t).sin() * (1.0 - theta.norm_squared())
    }

    pub fn height_gradient(&self, theta: &Vector2<f64>, t: f64) -> Vector2<f64> {
        -4.0 * (2.0 * PI * t).sin() * theta
    }

    pub fn height_time_deriv(&self, theta: &Vector2<f64>, t: f64) -> f64 {
        4.0 * PI * (2.0 * PI * t).cos() * (1.0 - theta.norm_squared())
    }

    /// Lagrangian (normal) and ALE (vertical) velocities of the graph:
    ///
    /// ```text
    /// v   = -z_t (grad z, -1)^T / (1 + |grad z|^2)
    /// v_a = (0, 0, z_t)^T
    /// ```
    pub fn velocities(&self, theta: &Vector2<f64>, t: f64) -> (Vector3<f64>, Vector3<f64>) {
        let zt = self.height_time_deriv(theta, t);
        let gz = self.height_gradient(theta, t);
        let lagrangian = -zt / (1.0 + gz.norm_squared()) * Vector3::new(gz.x, gz.y, -1.0);
        (lagrangian, Vector3::new(0.0, 0.0, zt))
    }
}

impl LevelSet for OscillatingDome {
    fn value(&self, x: &Vector3<f64>, t: f64) -> f64 {
        x.z - self.height(&x.xy(), t)
    }

    fn gradient(&self, x: &Vector3<f64>, t: f64) -> Vector3<f64> {
        let gz = self.height_gradient(&x.xy(), t);
        Vector3::new(-gz.x, -gz.y, 1.0)
    }

    fn hessian(&self, _: &Vector3<f64>, t: f64) -> Matrix3<f64> {
        // z is radially quadratic: D^2 z = -4 sin(2 pi t) I_2.
        let s = 4.0 * (2.0 * PI * t).sin();
        Matrix3::from_diagonal(&Vector3::new(s, s, 0.0))
    }

    fn time_deriv(&self, x: &Vector3<f64>, t: f64) -> f64 {
        -self.height_time_deriv(&x.xy(), t)
    }

    fn time_interval(&self) -> (f64, f64) {
        (0.0, 0.25)
    }

    fn snap(&self, x: &Vector3<f64>, t: f64) -> Result<Vector3<f64>> {
        Ok(Vector3::new(x.x, x.y, self.height(&x.xy(), t)))
    }
}
