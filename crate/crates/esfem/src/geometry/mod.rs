//! Closed-form moving surfaces and pointwise surface calculus.
//!
//! Surfaces are zero sets of a time-dependent level-set function
//! `d(x, t)` with hand-coded spatial gradient, Hessian and time
//! derivative. All differential operators are expressed through the
//! ambient identities
//!
//! ```text
//! nu      = grad d / |grad d|
//! v       = (-d_t / |grad d|) nu                    (normal velocity)
//! grad_S u = grad u - (grad u . nu) nu              (tangential gradient)
//! div_S w  = div w - nu^T (Dw) nu                   (surface divergence)
//! lap_S u  = lap u - nu^T (D^2 u) nu - H (grad u . nu),   H = div nu
//! ```
//!
//! which hold on the surface for any smooth ambient extension.

mod graph;
mod level_sets;
mod trajectories;
mod velocity;

pub use graph::OscillatingDome;
pub use level_sets::{Hemiellipsoid, PeriodicEllipsoid, PulsatingSextic, UnitSphere};
pub use trajectories::{
    hemiellipsoid_ale_map, hemiellipsoid_ale_position, pulsating_ale_map, pulsating_ale_position,
};
pub use velocity::{Velocity, VelocityField};

use crate::{Error, Result};
use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};

/// Gradient norms below this are treated as degenerate.
pub const GRADIENT_EPS: f64 = 1e-14;

/// Convergence tolerance for Newton projections onto the surface.
pub const PROJECTION_TOL: f64 = 1e-12;

/// Iteration cap for Newton projections.
pub const PROJECTION_MAX_ITER: usize = 50;

/// A moving surface given as the zero set of `d(x, t)` with closed-form
/// derivatives. `d` need not be a signed distance; a regular level set
/// (nonvanishing gradient near the zero set) is enough.
pub trait LevelSet: Send + Sync {
    fn value(&self, x: &Vector3<f64>, t: f64) -> f64;
    fn gradient(&self, x: &Vector3<f64>, t: f64) -> Vector3<f64>;
    fn hessian(&self, x: &Vector3<f64>, t: f64) -> Matrix3<f64>;
    fn time_deriv(&self, x: &Vector3<f64>, t: f64) -> f64;

    /// Time interval on which the evolution is meant to run.
    fn time_interval(&self) -> (f64, f64) {
        (0.0, f64::INFINITY)
    }

    /// True if the surface is the subset of the zero level set with
    /// `x3 >= 0` (boundary curve in the plane `x3 = 0`).
    fn upper_half_only(&self) -> bool {
        false
    }

    /// Projection used when placing new mesh nodes on the surface.
    ///
    /// Defaults to the closest-point projection; surfaces whose zero set
    /// folds back on itself override this with a more robust rule.
    fn construction_project(&self, x: &Vector3<f64>, t: f64) -> Result<Vector3<f64>> {
        closest_point(self, x, t)
    }

    /// Return a nearby on-surface point by Newton iteration along the
    /// level-set gradient, for points already close to the surface
    /// (post-ODE node projection). Graph surfaces override this with an
    /// exact vertical snap.
    fn snap(&self, x: &Vector3<f64>, t: f64) -> Result<Vector3<f64>> {
        let mut p = *x;
        let mut residual = f64::INFINITY;
        for _ in 0..PROJECTION_MAX_ITER {
            let d = self.value(&p, t);
            residual = d.abs();
            if residual <= PROJECTION_TOL {
                return Ok(p);
            }
            let g = self.gradient(&p, t);
            let g2 = g.norm_squared();
            if g2 < GRADIENT_EPS * GRADIENT_EPS {
                return Err(Error::DegenerateGradient { norm: g2.sqrt() });
            }
            p -= (d / g2) * g;
        }
        Err(Error::NoConvergence {
            max_iter: PROJECTION_MAX_ITER,
            residual,
        })
    }
}

/// Scalar ambient field `u(x, t)` with closed-form derivatives, used for
/// exact solutions and test data.
pub trait AmbientField: Send + Sync {
    fn value(&self, x: &Vector3<f64>, t: f64) -> f64;
    fn gradient(&self, x: &Vector3<f64>, t: f64) -> Vector3<f64>;
    fn hessian(&self, x: &Vector3<f64>, t: f64) -> Matrix3<f64>;
    fn time_deriv(&self, x: &Vector3<f64>, t: f64) -> f64;
}

fn unit_gradient<S: LevelSet + ?Sized>(
    surface: &S,
    x: &Vector3<f64>,
    t: f64,
) -> Result<(Vector3<f64>, f64)> {
    let g = surface.gradient(x, t);
    let norm = g.norm();
    if norm < GRADIENT_EPS {
        return Err(Error::DegenerateGradient { norm });
    }
    Ok((g / norm, norm))
}

/// Outward unit normal `grad d / |grad d|`.
pub fn normal<S: LevelSet + ?Sized>(surface: &S, x: &Vector3<f64>, t: f64) -> Result<Vector3<f64>> {
    unit_gradient(surface, x, t).map(|(nu, _)| nu)
}

/// Material (normal) velocity `v = (-d_t / |grad d|) nu`.
pub fn normal_velocity<S: LevelSet + ?Sized>(
    surface: &S,
    x: &Vector3<f64>,
    t: f64,
) -> Result<Vector3<f64>> {
    let (nu, norm) = unit_gradient(surface, x, t)?;
    Ok(-surface.time_deriv(x, t) / norm * nu)
}

/// Closest-point projection onto the zero level set.
///
/// Solves the stationarity system `p + lambda grad d(p) = x`, `d(p) = 0`
/// for the four unknowns `(p, lambda)` by damped Newton iteration
/// starting from `p = x`, `lambda = 0`. Steps are backtracked until the
/// residual decreases, which keeps the iteration stable on strongly
/// anisotropic level sets (gradient magnitudes spanning orders of
/// magnitude near thin features).
pub fn closest_point<S: LevelSet + ?Sized>(
    surface: &S,
    x: &Vector3<f64>,
    t: f64,
) -> Result<Vector3<f64>> {
    let residual_norm = |p: &Vector3<f64>, lambda: f64| -> f64 {
        let g = surface.gradient(p, t);
        let d = surface.value(p, t);
        (p + lambda * g - x).norm().max(d.abs())
    };
    let mut p = *x;
    let mut lambda = 0.0;
    let mut residual = residual_norm(&p, lambda);
    for _ in 0..PROJECTION_MAX_ITER {
        if residual <= PROJECTION_TOL {
            return Ok(p);
        }
        let g = surface.gradient(&p, t);
        let d = surface.value(&p, t);
        let pos_res = p + lambda * g - x;
        let hess = surface.hessian(&p, t);
        let mut jac = Matrix4::zeros();
        for i in 0..3 {
            for j in 0..3 {
                jac[(i, j)] = lambda * hess[(i, j)];
            }
            jac[(i, i)] += 1.0;
            jac[(i, 3)] = g[i];
            jac[(3, i)] = g[i];
        }
        let rhs = Vector4::new(-pos_res.x, -pos_res.y, -pos_res.z, -d);
        let delta = jac
            .lu()
            .solve(&rhs)
            .ok_or(Error::DegenerateGradient { norm: g.norm() })?;
        let dp = Vector3::new(delta.x, delta.y, delta.z);
        let mut alpha = 1.0;
        loop {
            let trial_p = p + alpha * dp;
            let trial_lambda = lambda + alpha * delta.w;
            let trial_residual = residual_norm(&trial_p, trial_lambda);
            if trial_residual < residual || alpha < 1.0 / 1024.0 {
                p = trial_p;
                lambda = trial_lambda;
                residual = trial_residual;
                break;
            }
            alpha *= 0.5;
        }
    }
    Err(Error::NoConvergence {
        max_iter: PROJECTION_MAX_ITER,
        residual,
    })
}

/// Robust on-surface lift of a near-surface point, for quadrature-point
/// lifting: the closest-point projection where it converges, otherwise
/// the gradient-flow snap. Coarse meshes of folded geometry put some
/// quadrature points outside the tube where the nearest point is unique;
/// the snap still produces the geometrically adjacent surface point
/// there.
pub fn lift_point<S: LevelSet + ?Sized>(
    surface: &S,
    x: &Vector3<f64>,
    t: f64,
) -> Result<Vector3<f64>> {
    match closest_point(surface, x, t) {
        Ok(p) => Ok(p),
        Err(Error::NoConvergence { .. }) => surface.snap(x, t),
        Err(e) => Err(e),
    }
}

/// Tangential (surface) gradient of an ambient field.
pub fn tangential_gradient<S: LevelSet + ?Sized>(
    field: &dyn AmbientField,
    surface: &S,
    x: &Vector3<f64>,
    t: f64,
) -> Result<Vector3<f64>> {
    let (nu, _) = unit_gradient(surface, x, t)?;
    let grad = field.gradient(x, t);
    Ok(grad - grad.dot(&nu) * nu)
}

/// Mean-curvature term `H = div nu = (tr D^2 d - nu^T D^2 d nu) / |grad d|`.
fn normal_divergence<S: LevelSet + ?Sized>(surface: &S, x: &Vector3<f64>, t: f64) -> Result<f64> {
    let (nu, norm) = unit_gradient(surface, x, t)?;
    let hess = surface.hessian(x, t);
    Ok((hess.trace() - (hess * nu).dot(&nu)) / norm)
}

/// Laplace-Beltrami operator applied to an ambient field, via the
/// identity `lap_S u = lap u - nu^T D^2 u nu - H (grad u . nu)`.
pub fn laplace_beltrami<S: LevelSet + ?Sized>(
    field: &dyn AmbientField,
    surface: &S,
    x: &Vector3<f64>,
    t: f64,
) -> Result<f64> {
    let (nu, _) = unit_gradient(surface, x, t)?;
    let grad = field.gradient(x, t);
    let hess = field.hessian(x, t);
    let h = normal_divergence(surface, x, t)?;
    Ok(hess.trace() - (hess * nu).dot(&nu) - h * grad.dot(&nu))
}

/// Step used for finite-difference velocity Jacobians.
pub const VELOCITY_FD_STEP: f64 = 1e-6;

/// Surface divergence `div_S w = div w - nu^T (Dw) nu` of a velocity
/// field, with the Jacobian `Dw` formed by central differences.
pub fn surface_divergence<W: Velocity + ?Sized, S: LevelSet + ?Sized>(
    w: &W,
    surface: &S,
    x: &Vector3<f64>,
    t: f64,
) -> Result<f64> {
    let (nu, _) = unit_gradient(surface, x, t)?;
    let jac = velocity::jacobian_fd(w, x, t, VELOCITY_FD_STEP)?;
    Ok(jac.trace() - (jac * nu).dot(&nu))
}


#[cfg(test)]
mod tests {
    use super::testutil::*;
    use super::*;
    use rand::Rng;

    struct Constant(f64);
    impl AmbientField for Constant {
        fn value(&self, _: &Vector3<f64>, _: f64) -> f64 {
            self.0
        }
        fn gradient(&self, _: &Vector3<f64>, _: f64) -> Vector3<f64> {
            Vector3::zeros()
        }
        fn hessian(&self, _: &Vector3<f64>, _: f64) -> Matrix3<f64> {
            Matrix3::zeros()
        }
        fn time_deriv(&self, _: &Vector3<f64>, _: f64) -> f64 {
            0.0
        }
    }

    struct Coordinate(usize);
    impl AmbientField for Coordinate {
        fn value(&self, x: &Vector3<f64>, _: f64) -> f64 {
            x[self.0]
        }
        fn gradient(&self, _: &Vector3<f64>, _: f64) -> Vector3<f64> {
            let mut g = Vector3::zeros();
            g[self.0] = 1.0;
            g
        }
        fn hessian(&self, _: &Vector3<f64>, _: f64) -> Matrix3<f64> {
            Matrix3::zeros()
        }
        fn time_deriv(&self, _: &Vector3<f64>, _: f64) -> f64 {
            0.0
        }
    }

    /// x_i * x_j, the degree-2 monomials used in the spherical-harmonic checks.
    pub(crate) struct Monomial(pub usize, pub usize);
    impl AmbientField for Monomial {
        fn value(&self, x: &Vector3<f64>, _: f64) -> f64 {
            x[self.0] * x[self.1]
        }
        fn gradient(&self, x: &Vector3<f64>, _: f64) -> Vector3<f64> {
            let mut g = Vector3::zeros();
            g[self.0] += x[self.1];
            g[self.1] += x[self.0];
            g
        }
        fn hessian(&self, _: &Vector3<f64>, _: f64) -> Matrix3<f64> {
            let mut m = Matrix3::zeros();
            m[(self.0, self.1)] += 1.0;
            m[(self.1, self.0)] += 1.0;
            m
        }
        fn time_deriv(&self, _: &Vector3<f64>, _: f64) -> f64 {
            0.0
        }
    }

    /// Sphere |x| = R(t) with R(t) = 1 + amp sin t; normal velocity R'(t) nu.
    struct ScalingSphere {
        amp: f64,
    }
    impl LevelSet for ScalingSphere {
        fn value(&self, x: &Vector3<f64>, t: f64) -> f64 {
            let r = 1.0 + self.amp * t.sin();
            x.norm_squared() - r * r
        }
        fn gradient(&self, x: &Vector3<f64>, _: f64) -> Vector3<f64> {
            2.0 * x
        }
        fn hessian(&self, _: &Vector3<f64>, _: f64) -> Matrix3<f64> {
            2.0 * Matrix3::identity()
        }
        fn time_deriv(&self, _: &Vector3<f64>, t: f64) -> f64 {
            let r = 1.0 + self.amp * t.sin();
            -2.0 * r * self.amp * t.cos()
        }
    }

    fn shipped_surfaces() -> Vec<(&'static str, Box<dyn LevelSet>)> {
        vec![
            ("hemiellipsoid", Box::new(Hemiellipsoid)),
            ("pulsating", Box::new(PulsatingSextic)),
            ("periodic", Box::new(PeriodicEllipsoid)),
            ("sphere", Box::new(UnitSphere)),
            ("dome", Box::new(OscillatingDome)),
        ]
    }

    #[test]
    fn closed_form_derivatives_match_finite_differences() {
        let mut rng = rng(42);
        for (name, surface) in shipped_surfaces() {
            for _ in 0..1000 {
                let x = random_point(&mut rng, 1.6);
                let t = rng.gen_range(0.0..2.0);
                let h = 1e-5;
                let g = surface.gradient(&x, t);
                let g_fd = fd_gradient(surface.as_ref(), &x, t, h);
                for i in 0..3 {
                    assert!(
                        rel_err(g_fd[i], g[i]) < 1e-6,
                        "{name} gradient[{i}] at {x:?} t={t}: {} vs {}",
                        g[i],
                        g_fd[i]
                    );
                }
                let hess = surface.hessian(&x, t);
                let hess_fd = fd_hessian(surface.as_ref(), &x, t, 1e-4);
                // Nested differencing leaves ~|d| eps / h^2 of roundoff, so
                // compare entries relative to the matrix scale.
                let scale = hess.norm().max(1.0);
                for i in 0..3 {
                    for j in 0..3 {
                        assert!(
                            (hess_fd[(i, j)] - hess[(i, j)]).abs() / scale < 1e-6,
                            "{name} hessian[{i},{j}]"
                        );
                    }
                }
                let dt = surface.time_deriv(&x, t);
                let dt_fd = fd_time_deriv(surface.as_ref(), &x, t, h);
                assert!(rel_err(dt_fd, dt) < 1e-6, "{name} d_t at {x:?} t={t}");
            }
        }
    }

    #[test]
    fn normal_on_unit_sphere_is_radial() {
        let n = normal(&UnitSphere, &Vector3::new(1.0, 0.0, 0.0), 0.7).unwrap();
        assert!((n - Vector3::new(1.0, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn normal_at_hemiellipsoid_pole() {
        let n = normal(&Hemiellipsoid, &Vector3::new(0.0, 0.0, 1.0), 0.0).unwrap();
        assert!((n - Vector3::new(0.0, 0.0, 1.0)).norm() < 1e-15);
        assert!((n.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn normal_matches_normalized_fd_gradient() {
        let mut rng = rng(7);
        let t = 0.3;
        for _ in 0..50 {
            let dir = random_unit(&mut rng);
            let x = Hemiellipsoid.construction_project(&(1.2 * dir), t).unwrap();
            let n = normal(&Hemiellipsoid, &x, t).unwrap();
            let fd = fd_gradient(&Hemiellipsoid, &x, t, 1e-5).normalize();
            assert!((n - fd).norm() < 1e-6);
        }
    }

    #[test]
    fn normal_velocity_vanishes_at_pole() {
        // d_t d = -x1^2 a'/a^2 vanishes at x1 = 0.
        let v = normal_velocity(&Hemiellipsoid, &Vector3::new(0.0, 0.0, 1.0), 0.0).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn normal_velocity_benchmark_value() {
        // At (1,0,0), t=0: a=1, a'=1/4, |grad d|=2 => v = (1/8, 0, 0).
        let v = normal_velocity(&Hemiellipsoid, &Vector3::new(1.0, 0.0, 0.0), 0.0).unwrap();
        assert!((v - Vector3::new(0.125, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn normal_velocity_of_scaling_sphere_is_radial_rate() {
        let surface = ScalingSphere { amp: 0.1 };
        let mut rng = rng(3);
        for _ in 0..100 {
            let t: f64 = rng.gen_range(0.0..3.0);
            let r = 1.0 + 0.1 * t.sin();
            let x = r * random_unit(&mut rng);
            let v = normal_velocity(&surface, &x, t).unwrap();
            let expected = 0.1 * t.cos() * (x / r);
            assert!((v - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn normal_velocity_is_parallel_to_normal() {
        let mut rng = rng(11);
        for (_, surface) in shipped_surfaces() {
            for _ in 0..200 {
                let t = rng.gen_range(0.0..2.0);
                let dir = random_unit(&mut rng);
                let Ok(x) = surface.snap(&(1.05 * dir), t) else {
                    continue;
                };
                let v = normal_velocity(surface.as_ref(), &x, t).unwrap();
                let nu = normal(surface.as_ref(), &x, t).unwrap();
                let tangential = v - v.dot(&nu) * nu;
                assert!(tangential.norm() <= 1e-12 * v.norm().max(1e-30));
            }
        }
    }

    #[test]
    fn closest_point_on_sphere_is_radial() {
        let p = closest_point(&UnitSphere, &Vector3::new(2.0, 0.0, 0.0), 0.0).unwrap();
        assert!((p - Vector3::new(1.0, 0.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn closest_point_fixes_surface_points() {
        let mut rng = rng(5);
        let t = 0.4;
        for _ in 0..100 {
            let x = Hemiellipsoid
                .construction_project(&random_unit(&mut rng), t)
                .unwrap();
            let p = closest_point(&Hemiellipsoid, &x, t).unwrap();
            assert!((p - x).norm() < 1e-11);
        }
    }

    #[test]
    fn closest_point_recovers_foot_point() {
        let mut rng = rng(17);
        let t = 0.9;
        for _ in 0..100 {
            let foot = Hemiellipsoid
                .construction_project(&random_unit(&mut rng), t)
                .unwrap();
            let nu = normal(&Hemiellipsoid, &foot, t).unwrap();
            let p = closest_point(&Hemiellipsoid, &(foot + 0.01 * nu), t).unwrap();
            assert!((p - foot).norm() < 1e-8);
        }
    }

    #[test]
    fn closest_point_is_idempotent_and_aligned() {
        let mut rng = rng(23);
        for (name, surface) in shipped_surfaces() {
            for _ in 0..200 {
                let t = rng.gen_range(0.0..1.5);
                let Ok(base) = surface.snap(&random_unit(&mut rng), t) else {
                    continue;
                };
                let x = base + 0.02 * random_unit(&mut rng);
                let Ok(p) = closest_point(surface.as_ref(), &x, t) else {
                    continue;
                };
                assert!(surface.value(&p, t).abs() <= 1e-12, "{name} residual");
                let again = closest_point(surface.as_ref(), &p, t).unwrap();
                assert!((again - p).norm() <= 1e-10, "{name} idempotence");
                // x - p is parallel to the normal at p.
                let nu = normal(surface.as_ref(), &p, t).unwrap();
                let offset = x - p;
                let off_normal = offset - offset.dot(&nu) * nu;
                assert!(off_normal.norm() <= 1e-10, "{name} alignment");
            }
        }
    }

    #[test]
    fn tangential_gradient_examples() {
        let north = Vector3::new(0.0, 0.0, 1.0);
        let g = tangential_gradient(&Constant(4.0), &UnitSphere, &north, 0.0).unwrap();
        assert!(g.norm() == 0.0);
        let g = tangential_gradient(&Coordinate(2), &UnitSphere, &north, 0.0).unwrap();
        assert!(g.norm() < 1e-15);
        let g = tangential_gradient(&Coordinate(0), &UnitSphere, &north, 0.0).unwrap();
        assert!((g - Vector3::new(1.0, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn tangential_gradient_is_orthogonal_to_normal() {
        let mut rng = rng(31);
        let field = Monomial(0, 1);
        for _ in 0..200 {
            let t = rng.gen_range(0.0..2.0);
            let x = Hemiellipsoid
                .construction_project(&random_unit(&mut rng), t)
                .unwrap();
            let g = tangential_gradient(&field, &Hemiellipsoid, &x, t).unwrap();
            let nu = normal(&Hemiellipsoid, &x, t).unwrap();
            assert!(g.dot(&nu).abs() <= 1e-12);
        }
    }

    #[test]
    fn laplace_beltrami_of_quadratic_harmonics_on_sphere() {
        let mut rng = rng(37);
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            let field = Monomial(i, j);
            for _ in 0..1000 {
                let x = random_unit(&mut rng);
                let lb = laplace_beltrami(&field, &UnitSphere, &x, 0.0).unwrap();
                assert!((lb + 6.0 * x[i] * x[j]).abs() < 1e-10);
            }
        }
        let lb = laplace_beltrami(&Constant(3.0), &UnitSphere, &Vector3::x(), 0.0).unwrap();
        assert!(lb.abs() < 1e-14);
    }

    /// Independent check: pull the field back through the closest-point
    /// chart over the tangent plane and take a Richardson-extrapolated
    /// five-point Laplacian. This agrees with the ambient identity to the
    /// chart's O(h^2) consistency.
    fn local_chart_laplacian(
        field: &dyn AmbientField,
        surface: &dyn LevelSet,
        x: &Vector3<f64>,
        t: f64,
    ) -> f64 {
        let nu = normal(surface, x, t).unwrap();
        let e1 = if nu.x.abs() < 0.9 {
            Vector3::x().cross(&nu).normalize()
        } else {
            Vector3::y().cross(&nu).normalize()
        };
        let e2 = nu.cross(&e1);
        let pullback = |s: f64, u: f64| {
            let p = closest_point(surface, &(x + s * e1 + u * e2), t).unwrap();
            field.value(&p, t)
        };
        let five_point = |h: f64| {
            (pullback(h, 0.0) + pullback(-h, 0.0) + pullback(0.0, h) + pullback(0.0, -h)
                - 4.0 * pullback(0.0, 0.0))
                / (h * h)
        };
        let coarse = five_point(0.02);
        let fine = five_point(0.01);
        (4.0 * fine - coarse) / 3.0
    }

    #[test]
    fn laplace_beltrami_matches_local_chart_oracle() {
        let mut rng = rng(41);
        let field = Monomial(0, 1);
        let t = 0.3;
        for _ in 0..20 {
            let x = Hemiellipsoid
                .construction_project(&random_unit(&mut rng), t)
                .unwrap();
            let lb = laplace_beltrami(&field, &Hemiellipsoid, &x, t).unwrap();
            let oracle = local_chart_laplacian(&field, &Hemiellipsoid, &x, t);
            assert!(
                (lb - oracle).abs() < 1e-4,
                "ambient {lb} vs chart {oracle} at {x:?}"
            );
        }
    }

    #[test]
    fn surface_divergence_examples() {
        let constant = |_: &Vector3<f64>, _: f64| Vector3::new(0.3, -1.2, 0.5);
        let d = surface_divergence(&constant, &UnitSphere, &Vector3::x(), 0.0).unwrap();
        assert!(d.abs() < 1e-9);

        // w(x) = x has Dw = I; on any surface div_S x = 3 - 1 = 2.
        let identity = |x: &Vector3<f64>, _: f64| *x;
        let mut rng = rng(43);
        for _ in 0..100 {
            let x = random_unit(&mut rng);
            let d = surface_divergence(&identity, &UnitSphere, &x, 0.0).unwrap();
            assert!((d - 2.0).abs() < 1e-8);
        }
    }

    #[test]
    fn surface_divergence_matches_fd_oracle() {
        // Oracle: divergence of the tangentially projected field through a
        // chart-free formula, div_S w = sum_i e_i . (D w) e_i over an
        // orthonormal tangent basis, with an independent FD step.
        let mut rng = rng(47);
        let t = 0.6;
        let w = VelocityField::LevelSetNormal(std::sync::Arc::new(Hemiellipsoid));
        for _ in 0..30 {
            let x = Hemiellipsoid
                .construction_project(&random_unit(&mut rng), t)
                .unwrap();
            let d = surface_divergence(&w, &Hemiellipsoid, &x, t).unwrap();
            let nu = normal(&Hemiellipsoid, &x, t).unwrap();
            let e1 = if nu.x.abs() < 0.9 {
                Vector3::x().cross(&nu).normalize()
            } else {
                Vector3::y().cross(&nu).normalize()
            };
            let e2 = nu.cross(&e1);
            let h = 1e-5;
            let mut oracle = 0.0;
            for e in [e1, e2] {
                let wp = w.eval(&(x + h * e), t).unwrap();
                let wm = w.eval(&(x - h * e), t).unwrap();
                oracle += ((wp - wm) / (2.0 * h)).dot(&e);
            }
            // div_S w = trace of Dw restricted to the tangent plane plus the
            // normal-normal entry removed; for tangent directions only this
            // equals div w - nu^T Dw nu.
            assert!((d - oracle).abs() < 1e-5, "{d} vs {oracle}");
        }
    }
}
