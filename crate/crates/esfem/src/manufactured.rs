//! Exact solutions, source terms and initial conditions for the shipped
//! benchmark problems.

use crate::geometry::{
    laplace_beltrami, surface_divergence, AmbientField, LevelSet, VelocityField,
};
use crate::{Error, Result};
use nalgebra::{Matrix3, Vector3};
use std::f64::consts::PI;
use std::sync::Arc;

/// `u(x, t) = sin(t) x1 x2`.
#[derive(Clone, Copy, Debug)]
pub struct SinTXY;

impl AmbientField for SinTXY {
    fn value(&self, x: &Vector3<f64>, t: f64) -> f64 {
        t.sin() * x.x * x.y
    }
    fn gradient(&self, x: &Vector3<f64>, t: f64) -> Vector3<f64> {
        t.sin() * Vector3::new(x.y, x.x, 0.0)
    }
    fn hessian(&self, _: &Vector3<f64>, t: f64) -> Matrix3<f64> {
        let s = t.sin();
        Matrix3::new(0.0, s, 0.0, s, 0.0, 0.0, 0.0, 0.0, 0.0)
    }
    fn time_deriv(&self, x: &Vector3<f64>, t: f64) -> f64 {
        t.cos() * x.x * x.y
    }
}

/// `u(x, t) = cos(pi t) x1 x2 x3`.
#[derive(Clone, Copy, Debug)]
pub struct CosPiTXYZ;

impl AmbientField for CosPiTXYZ {
    fn value(&self, x: &Vector3<f64>, t: f64) -> f64 {
        (PI * t).cos() * x.x * x.y * x.z
    }
    fn gradient(&self, x: &Vector3<f64>, t: f64) -> Vector3<f64> {
        (PI * t).cos() * Vector3::new(x.y * x.z, x.x * x.z, x.x * x.y)
    }
    fn hessian(&self, x: &Vector3<f64>, t: f64) -> Matrix3<f64> {
        let c = (PI * t).cos();
        Matrix3::new(
            0.0,
            c * x.z,
            c * x.y,
            c * x.z,
            0.0,
            c * x.x,
            c * x.y,
            c * x.x,
            0.0,
        )
    }
    fn time_deriv(&self, x: &Vector3<f64>, t: f64) -> f64 {
        -PI * (PI * t).sin() * x.x * x.y * x.z
    }
}

/// `u(x, t) = exp(-6 t) x1 x2`: decays under pure surface diffusion on the
/// unit sphere (eigenvalue 6), so the source vanishes identically.
#[derive(Clone, Copy, Debug)]
pub struct DecayingHarmonicXY;

impl AmbientField for DecayingHarmonicXY {
    fn value(&self, x: &Vector3<f64>, t: f64) -> f64 {
        (-6.0 * t).exp() * x.x * x.y
    }
    fn gradient(&self, x: &Vector3<f64>, t: f64) -> Vector3<f64> {
        (-6.0 * t).exp() * Vector3::new(x.y, x.x, 0.0)
    }
    fn hessian(&self, _: &Vector3<f64>, t: f64) -> Matrix3<f64> {
        let e = (-6.0 * t).exp();
        Matrix3::new(0.0, e, 0.0, e, 0.0, 0.0, 0.0, 0.0, 0.0)
    }
    fn time_deriv(&self, x: &Vector3<f64>, t: f64) -> f64 {
        -6.0 * (-6.0 * t).exp() * x.x * x.y
    }
}

/// Source term that manufactures a prescribed exact solution:
///
/// ```text
/// f = u_t + v . grad u + u div_S v - lap_S u
/// ```
///
/// with `v` the material velocity. All four terms are evaluated through
/// the geometry module; `x` must lie on the surface.
pub fn manufactured_rhs<S: LevelSet + ?Sized>(
    u: &dyn AmbientField,
    v: &VelocityField,
    surface: &S,
    x: &Vector3<f64>,
    t: f64,
) -> Result<f64> {
    let vel = v.eval(x, t)?;
    Ok(u.time_deriv(x, t)
        + vel.dot(&u.gradient(x, t))
        + u.value(x, t) * surface_divergence(v, surface, x, t)?
        - laplace_beltrami(u, surface, x, t)?)
}

/// Initial data for the long-time periodic experiment, variants 1-4:
///
/// ```text
/// u1 = 1
/// u2 = 1 + sin(2 pi x1)
/// u3 = 1 + 4 sin(8 pi x1) + 3 cos(6 pi x2) + 2 sin(8 pi x3)
/// u4 = 1 + 8 sin(16 pi x1) + 7 cos(14 pi x2) + 6 sin(24 pi x3)
/// ```
///
/// The discrete runs add a constant shift after interpolation so all
/// variants carry the same total mass; that shift is applied by the
/// caller on the assembled mesh.
pub fn oscillatory_initial_condition(variant: usize, x: &Vector3<f64>) -> f64 {
    match variant {
        1 => 1.0,
        2 => 1.0 + (2.0 * PI * x.x).sin(),
        3 => {
            1.0 + 4.0 * (8.0 * PI * x.x).sin()
                + 3.0 * (6.0 * PI * x.y).cos()
                + 2.0 * (8.0 * PI * x.z).sin()
        }
        4 => {
            1.0 + 8.0 * (16.0 * PI * x.x).sin()
                + 7.0 * (14.0 * PI * x.y).cos()
                + 6.0 * (24.0 * PI * x.z).sin()
        }
        _ => panic!("initial-condition variant must be 1..=4, got {variant}"),
    }
}

/// How the source term of a problem is defined.
#[derive(Clone)]
pub enum SourceTerm {
    /// Homogeneous equation.
    None,
    /// Manufactured from the exact solution and material velocity.
    Manufactured,
    /// Fixed ambient function of `(x, t)`.
    Ambient(Arc<dyn Fn(&Vector3<f64>, f64) -> f64 + Send + Sync>),
}

/// A complete problem statement: geometry, velocities, data.
#[derive(Clone)]
pub struct ManufacturedProblem {
    pub surface: Arc<dyn LevelSet>,
    /// Exact solution, when one is known.
    pub exact: Option<Arc<dyn AmbientField>>,
    /// Material velocity of the surface.
    pub material_velocity: VelocityField,
    /// ALE velocity; `None` means Lagrangian mesh motion (zero arbitrary
    /// tangential velocity).
    pub ale_velocity: Option<VelocityField>,
    pub source: SourceTerm,
    pub time_interval: (f64, f64),
    /// True when the surface is closed (no boundary terms; total mass is
    /// conserved for the homogeneous equation).
    pub closed_surface: bool,
}

impl ManufacturedProblem {
    pub fn exact_solution(&self, x: &Vector3<f64>, t: f64) -> Result<f64> {
        self.exact
            .as_ref()
            .map(|u| u.value(x, t))
            .ok_or(Error::NoExactSolution)
    }

    /// Source value at an on-surface point.
    pub fn source_value(&self, x: &Vector3<f64>, t: f64) -> Result<f64> {
        match &self.source {
            SourceTerm::None => Ok(0.0),
            SourceTerm::Ambient(f) => Ok(f(x, t)),
            SourceTerm::Manufactured => {
                let u = self.exact.as_ref().ok_or(Error::NoExactSolution)?;
                manufactured_rhs(
                    u.as_ref(),
                    &self.material_velocity,
                    self.surface.as_ref(),
                    x,
                    t,
                )
            }
        }
    }

    /// Nodal tangential velocity `a_T = v_a - v` entering the advection
    /// matrix; zero for Lagrangian motion.
    pub fn tangential_velocity(&self, x: &Vector3<f64>, t: f64) -> Result<Vector3<f64>> {
        match &self.ale_velocity {
            None => Ok(Vector3::zeros()),
            Some(va) => Ok(va.eval(x, t)? - self.material_velocity.eval(x, t)?),
        }
    }
}

/// The four shipped problem configurations.
pub mod problems {
    use super::*;
    use crate::geometry::{Hemiellipsoid, OscillatingDome, PeriodicEllipsoid, PulsatingSextic};

    /// Hemiellipsoid benchmark: `u = sin(t) x1 x2` on `[0, 2]`.
    pub fn hemiellipsoid(ale: bool) -> ManufacturedProblem {
        ManufacturedProblem {
            surface: Arc::new(Hemiellipsoid),
            exact: Some(Arc::new(SinTXY)),
            material_velocity: VelocityField::LevelSetNormal(Arc::new(Hemiellipsoid)),
            ale_velocity: ale.then_some(VelocityField::HemiellipsoidAle),
            source: SourceTerm::Manufactured,
            time_interval: (0.0, 2.0),
            closed_surface: false,
        }
    }

    /// Pulsating sextic comparison: `u = cos(pi t) x1 x2 x3` on `[0, 1]`.
    pub fn pulsating(ale: bool) -> ManufacturedProblem {
        ManufacturedProblem {
            surface: Arc::new(PulsatingSextic),
            exact: Some(Arc::new(CosPiTXYZ)),
            material_velocity: VelocityField::LevelSetNormal(Arc::new(PulsatingSextic)),
            ale_velocity: ale.then_some(VelocityField::PulsatingAle),
            source: SourceTerm::Manufactured,
            time_interval: (0.0, 1.0),
            closed_surface: true,
        }
    }

    /// Graph over the unit disc with fixed source `10 sin(2 pi x3^2)`,
    /// zero initial data, natural boundary conditions, on `[0, 0.25]`.
    pub fn dome(ale: bool) -> ManufacturedProblem {
        ManufacturedProblem {
            surface: Arc::new(OscillatingDome),
            exact: None,
            material_velocity: VelocityField::graph_normal(),
            ale_velocity: ale.then_some(VelocityField::GraphVertical(OscillatingDome)),
            source: SourceTerm::Ambient(Arc::new(|x: &Vector3<f64>, _| {
                10.0 * (2.0 * PI * x.z * x.z).sin()
            })),
            time_interval: (0.0, 0.25),
            closed_surface: false,
        }
    }

    /// Periodically deforming ellipsoid, homogeneous equation, Lagrangian
    /// motion; initial data chosen per variant.
    pub fn periodic_ellipsoid() -> ManufacturedProblem {
        ManufacturedProblem {
            surface: Arc::new(PeriodicEllipsoid),
            exact: None,
            material_velocity: VelocityField::LevelSetNormal(Arc::new(PeriodicEllipsoid)),
            ale_velocity: None,
            source: SourceTerm::None,
            time_interval: (0.0, 6.0),
            closed_surface: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::testutil::{random_unit, rng};
    use crate::geometry::{Hemiellipsoid, UnitSphere};
    use rand::Rng;

    #[test]
    fn rhs_at_time_zero_reduces_to_time_derivative() {
        // u = sin(t) x1 x2 vanishes at t = 0 together with its gradient,
        // so only u_t = x1 x2 survives.
        let problem = problems::hemiellipsoid(false);
        let mut rng = rng(61);
        for _ in 0..50 {
            let mut s = random_unit(&mut rng);
            s.z = s.z.abs();
            let f = problem.source_value(&s, 0.0).unwrap();
            assert!((f - s.x * s.y).abs() < 1e-9, "{f} vs {}", s.x * s.y);
        }
    }

    #[test]
    fn decaying_harmonic_on_stationary_sphere_needs_no_source() {
        let u = DecayingHarmonicXY;
        let v = VelocityField::Zero;
        let mut rng = rng(67);
        for _ in 0..100 {
            let x = random_unit(&mut rng);
            let t = rng.gen_range(0.0..1.0);
            let f = manufactured_rhs(&u, &v, &UnitSphere, &x, t).unwrap();
            assert!(f.abs() < 1e-9, "source should vanish, got {f}");
        }
    }

    #[test]
    fn exact_solution_values() {
        let problem = problems::hemiellipsoid(true);
        let x = Vector3::new(0.6, 0.8, 0.0);
        assert_eq!(problem.exact_solution(&x, 0.0).unwrap(), 0.0);
        let v = problem
            .exact_solution(&x, std::f64::consts::FRAC_PI_2)
            .unwrap();
        assert!((v - 0.48).abs() < 1e-15);

        let pulsating = problems::pulsating(true);
        let p = Vector3::new(0.3, 0.5, 0.7);
        let v = pulsating.exact_solution(&p, 1.0).unwrap();
        assert!((v + p.x * p.y * p.z).abs() < 1e-12, "cos(pi) = -1");

        assert!(matches!(
            problems::periodic_ellipsoid().exact_solution(&p, 0.0),
            Err(Error::NoExactSolution)
        ));
        assert!(matches!(
            problems::dome(true).exact_solution(&p, 0.0),
            Err(Error::NoExactSolution)
        ));
    }

    #[test]
    fn initial_condition_values() {
        assert_eq!(
            oscillatory_initial_condition(1, &Vector3::new(0.3, -0.8, 0.1)),
            1.0
        );
        let v = oscillatory_initial_condition(2, &Vector3::new(0.0, 1.0, 0.0));
        assert!((v - 1.0).abs() < 1e-15);
        // 1 + 4 sin 0 + 3 cos 0 + 2 sin(8 pi) = 4.
        let v = oscillatory_initial_condition(3, &Vector3::new(0.0, 0.0, 1.0));
        assert!((v - 4.0).abs() < 1e-12);
    }

    /// Reference values computed by full symbolic differentiation of the
    /// source recipe (see scripts/gen_source_fixtures.py).
    fn check_fixture(path: &str, problem: &ManufacturedProblem, tol: f64) {
        let data = std::fs::read_to_string(path).unwrap();
        let mut checked = 0;
        for line in data.lines().skip(1) {
            let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            let x = Vector3::new(cols[0], cols[1], cols[2]);
            let (t, expected) = (cols[3], cols[4]);
            assert!(problem.surface.value(&x, t).abs() < 1e-10);
            let f = problem.source_value(&x, t).unwrap();
            assert!(
                (f - expected).abs() < tol * expected.abs().max(1.0),
                "f({x:?}, {t}) = {f}, reference {expected}"
            );
            checked += 1;
        }
        assert!(checked >= 100, "fixture unexpectedly short: {checked}");
    }

    #[test]
    fn rhs_matches_symbolic_reference_hemiellipsoid() {
        let problem = problems::hemiellipsoid(false);
        check_fixture(
            concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/tests/fixtures/rhs_hemiellipsoid.csv"
            ),
            &problem,
            1e-5,
        );
    }

    #[test]
    fn rhs_matches_symbolic_reference_pulsating() {
        let problem = problems::pulsating(false);
        check_fixture(
            concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/tests/fixtures/rhs_pulsating.csv"
            ),
            &problem,
            1e-5,
        );
    }

    #[test]
    fn tangential_velocity_is_zero_for_lagrangian_motion() {
        let problem = problems::hemiellipsoid(false);
        let x = Hemiellipsoid
            .construction_project(&Vector3::new(0.5, 0.5, 0.5), 0.3)
            .unwrap();
        assert_eq!(
            problem.tangential_velocity(&x, 0.3).unwrap(),
            Vector3::zeros()
        );
    }
}
