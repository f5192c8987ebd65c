//! The shipped closed-form level-set surfaces.

use super::LevelSet;
use crate::{Error, Result};
use nalgebra::{Matrix3, Vector3};

/// Hemiellipsoid `x1^2/a(t) + x2^2 + x3^2 = 1`, `x3 >= 0`, with
/// `a(t) = 1 + 0.25 sin t`. The boundary circle lies in the plane
/// `x3 = 0` for all times.
#[derive(Clone, Copy, Debug)]
pub struct Hemiellipsoid;

impl Hemiellipsoid {
    pub fn axis(t: f64) -> f64 {
        1.0 + 0.25 * t.sin()
    }

    pub fn axis_rate(t: f64) -> f64 {
        0.25 * t.cos()
    }
}

impl LevelSet for Hemiellipsoid {
    fn value(&self, x: &Vector3<f64>, t: f64) -> f64 {
        x.x * x.x / Self::axis(t) + x.y * x.y + x.z * x.z - 1.0
    }

    fn gradient(&self, x: &Vector3<f64>, t: f64) -> Vector3<f64> {
        Vector3::new(2.0 * x.x / Self::axis(t), 2.0 * x.y, 2.0 * x.z)
    }

    fn hessian(&self, _: &Vector3<f64>, t: f64) -> Matrix3<f64> {
        Matrix3::from_diagonal(&Vector3::new(2.0 / Self::axis(t), 2.0, 2.0))
    }

    fn time_deriv(&self, x: &Vector3<f64>, t: f64) -> f64 {
        let a = Self::axis(t);
        -x.x * x.x * Self::axis_rate(t) / (a * a)
    }

    fn time_interval(&self) -> (f64, f64) {
        (0.0, 2.0)
    }

    fn upper_half_only(&self) -> bool {
        true
    }
}

/// The static unit sphere `|x|^2 = 1`.
#[derive(Clone, Copy, Debug)]
pub struct UnitSphere;

impl LevelSet for UnitSphere {
    fn value(&self, x: &Vector3<f64>, _: f64) -> f64 {
        x.norm_squared() - 1.0
    }

    fn gradient(&self, x: &Vector3<f64>, _: f64) -> Vector3<f64> {
        2.0 * x
    }

    fn hessian(&self, _: &Vector3<f64>, _: f64) -> Matrix3<f64> {
        2.0 * Matrix3::identity()
    }

    fn time_deriv(&self, _: &Vector3<f64>, _: f64) -> f64 {
        0.0
    }
}

/// Ellipsoid `x1^2/a^2 + x2^2/b^2 + x3^2/c^2 = 1` whose axes oscillate
/// with period 2: `a = 1 - 0.1 sin(pi t)`, `b = 1 - 0.2 sin(pi t)`,
/// `c = 1 + 0.1 sin(pi t)`. At integer times it is the unit sphere.
#[derive(Clone, Copy, Debug)]
pub struct PeriodicEllipsoid;

impl PeriodicEllipsoid {
    pub fn axes(t: f64) -> (f64, f64, f64) {
        let s = (std::f64::consts::PI * t).sin();
        (1.0 - 0.1 * s, 1.0 - 0.2 * s, 1.0 + 0.1 * s)
    }

    pub fn axis_rates(t: f64) -> (f64, f64, f64) {
        let c = std::f64::consts::PI * (std::f64::consts::PI * t).cos();
        (-0.1 * c, -0.2 * c, 0.1 * c)
    }
}

impl LevelSet for PeriodicEllipsoid {
    fn value(&self, x: &Vector3<f64>, t: f64) -> f64 {
        let (a, b, c) = Self::axes(t);
        x.x * x.x / (a * a) + x.y * x.y / (b * b) + x.z * x.z / (c * c) - 1.0
    }

    fn gradient(&self, x: &Vector3<f64>, t: f64) -> Vector3<f64> {
        let (a, b, c) = Self::axes(t);
        Vector3::new(
            2.0 * x.x / (a * a),
            2.0 * x.y / (b * b),
            2.0 * x.z / (c * c),
        )
    }

    fn hessian(&self, _: &Vector3<f64>, t: f64) -> Matrix3<f64> {
        let (a, b, c) = Self::axes(t);
        Matrix3::from_diagonal(&Vector3::new(2.0 / (a * a), 2.0 / (b * b), 2.0 / (c * c)))
    }

    fn time_deriv(&self, x: &Vector3<f64>, t: f64) -> f64 {
        let (a, b, c) = Self::axes(t);
        let (da, db, dc) = Self::axis_rates(t);
        -2.0 * (x.x * x.x * da / (a * a * a)
            + x.y * x.y * db / (b * b * b)
            + x.z * x.z * dc / (c * c * c))
    }
}

/// Closed surface `x1^2/a(t)^2 + G(x2^2) + G(x3^2/L(t)^2) = 1` with
/// `G(s) = 31.25 s (s - 0.36)(s - 0.95)`, `a = 0.1 + 0.01 sin(2 pi t)`
/// and `L = 1 + 0.3 sin(4 pi t)`; period 1 in time.
///
/// The full zero set is a genus-4 surface: the region
/// `{(y, z) : G(y^2) + G(z^2/L^2) <= 1}` has four holes around
/// `(+-0.4, +-0.4 L)` through which tunnels run in the `x1` direction.
/// The component meshed here is the outer sheet, which is star shaped
/// with respect to the origin, so node placement projects radially to
/// the outermost level-set crossing instead of to the nearest point
/// (nearest-point projection from a coarse hull captures tunnel walls).
#[derive(Clone, Copy, Debug)]
pub struct PulsatingSextic;

impl PulsatingSextic {
    pub fn axis_a(t: f64) -> f64 {
        0.1 + 0.01 * (2.0 * std::f64::consts::PI * t).sin()
    }

    pub fn axis_a_rate(t: f64) -> f64 {
        0.02 * std::f64::consts::PI * (2.0 * std::f64::consts::PI * t).cos()
    }

    pub fn axis_l(t: f64) -> f64 {
        1.0 + 0.3 * (4.0 * std::f64::consts::PI * t).sin()
    }

    pub fn axis_l_rate(t: f64) -> f64 {
        1.2 * std::f64::consts::PI * (4.0 * std::f64::consts::PI * t).cos()
    }

    fn g(s: f64) -> f64 {
        31.25 * s * (s - 0.36) * (s - 0.95)
    }

    fn g_prime(s: f64) -> f64 {
        31.25 * (3.0 * s * s - 2.0 * 1.31 * s + 0.342)
    }

    fn g_second(s: f64) -> f64 {
        31.25 * (6.0 * s - 2.0 * 1.31)
    }
}

impl LevelSet for PulsatingSextic {
    fn value(&self, x: &Vector3<f64>, t: f64) -> f64 {
        let a = Self::axis_a(t);
        let l = Self::axis_l(t);
        x.x * x.x / (a * a) + Self::g(x.y * x.y) + Self::g(x.z * x.z / (l * l)) - 1.0
    }

    fn gradient(&self, x: &Vector3<f64>, t: f64) -> Vector3<f64> {
        let a = Self::axis_a(t);
        let l2 = Self::axis_l(t).powi(2);
        Vector3::new(
            2.0 * x.x / (a * a),
            2.0 * x.y * Self::g_prime(x.y * x.y),
            2.0 * x.z / l2 * Self::g_prime(x.z * x.z / l2),
        )
    }

    fn hessian(&self, x: &Vector3<f64>, t: f64) -> Matrix3<f64> {
        let a = Self::axis_a(t);
        let l2 = Self::axis_l(t).powi(2);
        let sy = x.y * x.y;
        let sz = x.z * x.z / l2;
        Matrix3::from_diagonal(&Vector3::new(
            2.0 / (a * a),
            2.0 * Self::g_prime(sy) + 4.0 * sy * Self::g_second(sy),
            (2.0 * Self::g_prime(sz) + 4.0 * sz * Self::g_second(sz)) / l2,
        ))
    }

    fn time_deriv(&self, x: &Vector3<f64>, t: f64) -> f64 {
        let a = Self::axis_a(t);
        let l = Self::axis_l(t);
        let sz = x.z * x.z / (l * l);
        -2.0 * x.x * x.x * Self::axis_a_rate(t) / (a * a * a)
            - 2.0 * sz * Self::axis_l_rate(t) / l * Self::g_prime(sz)
    }

    fn time_interval(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    /// Radial projection to the outermost level-set crossing.
    fn construction_project(&self, x: &Vector3<f64>, t: f64) -> Result<Vector3<f64>> {
        let norm = x.norm();
        if norm < 1e-12 {
            return Err(Error::Domain("cannot project the origin radially".into()));
        }
        let dir = x / norm;
        let eval = |r: f64| self.value(&(r * dir), t);
        // Outside radius: beyond |x3| = 1.3 L and the pillow extent the
        // value is positive in every direction.
        let mut hi = 2.5;
        debug_assert!(eval(hi) > 0.0);
        let mut r = hi - 0.005;
        let mut lo = None;
        while r > 0.005 {
            if eval(r) < 0.0 {
                lo = Some(r);
                break;
            }
            hi = r;
            r -= 0.005;
        }
        let Some(mut lo) = lo else {
            return Err(Error::NoConvergence {
                max_iter: 0,
                residual: f64::INFINITY,
            });
        };
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if eval(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi) * dir)
    }
}
