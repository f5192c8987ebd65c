//! Lifted error norms on the discrete surface, experimental orders of
//! convergence, and the tabulated error report.
//!
//! Errors compare the discrete solution against the exact solution pulled
//! back onto the discrete surface: at a quadrature point `x_q` of a
//! surface triangle the reference value is `u(p(x_q, t), t)` with `p` the
//! closest-point projection onto the smooth surface ("inverse lift").

use crate::fem::{element_geometry, TriangleQuadrature};
use crate::geometry::{lift_point, tangential_gradient, AmbientField, LevelSet};
use crate::mesh::SurfaceMesh;
use crate::{Error, Result};
use std::path::Path;

/// Exact-solution values at all quadrature points of the mesh (row-major
/// per triangle), evaluated through the inverse lift.
pub fn inverse_lift_values(
    exact: &dyn AmbientField,
    surface: &dyn LevelSet,
    mesh: &SurfaceMesh,
    t: f64,
    rule: &TriangleQuadrature,
) -> Result<Vec<f64>> {
    let mut values = Vec::with_capacity(mesh.triangle_count() * rule.len());
    for k in 0..mesh.triangle_count() {
        let [p0, p1, p2] = mesh.triangle_positions(k);
        for bary in &rule.points {
            let xq = bary[0] * p0 + bary[1] * p1 + bary[2] * p2;
            let lifted = lift_point(surface, &xq, t)?;
            values.push(exact.value(&lifted, t));
        }
    }
    Ok(values)
}

/// L2 error and H1-seminorm error of a coefficient vector at one time.
///
/// The H1 part compares the elementwise-constant discrete tangential
/// gradient against the exact tangential gradient at the lifted point
/// (no projection onto the discrete tangent plane).
pub fn step_errors(
    u: &[f64],
    mesh: &SurfaceMesh,
    exact: &dyn AmbientField,
    surface: &dyn LevelSet,
    t: f64,
    rule: &TriangleQuadrature,
) -> Result<(f64, f64)> {
    debug_assert_eq!(u.len(), mesh.vertex_count());
    let mut l2_sq = 0.0;
    let mut h1_sq = 0.0;
    for (k, tri) in mesh.triangles().iter().enumerate() {
        let geo = element_geometry(mesh, k)?;
        let [p0, p1, p2] = mesh.triangle_positions(k);
        let grad_h = u[tri[0]] * geo.basis_gradients[0]
            + u[tri[1]] * geo.basis_gradients[1]
            + u[tri[2]] * geo.basis_gradients[2];
        for (bary, &w) in rule.points.iter().zip(&rule.weights) {
            let xq = bary[0] * p0 + bary[1] * p1 + bary[2] * p2;
            let lifted = lift_point(surface, &xq, t)?;
            let uh: f64 = (0..3).map(|l| bary[l] * u[tri[l]]).sum();
            l2_sq += geo.area * w * (exact.value(&lifted, t) - uh).powi(2);
            let grad_exact = tangential_gradient(exact, surface, &lifted, t)?;
            h1_sq += geo.area * w * (grad_exact - grad_h).norm_squared();
        }
    }
    Ok((l2_sq.sqrt(), h1_sq.sqrt()))
}

/// Accumulate per-step `(l2, h1)` errors into the run norms
/// `(max_n l2_n, sqrt(sum_n tau h1_n^2))`. The caller passes the steps
/// that enter the norms (from n = 2 for the two-step scheme, n = 1 for
/// implicit Euler).
pub fn accumulate_norms(series: &[(f64, f64)], tau: f64) -> Result<(f64, f64)> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    let linf_l2 = series.iter().map(|e| e.0).fold(0.0f64, f64::max);
    let l2_h1 = series.iter().map(|e| tau * e.1 * e.1).sum::<f64>().sqrt();
    Ok((linf_l2, l2_h1))
}

/// Experimental order of convergence between two refinement levels.
pub fn eoc(e_coarse: f64, e_fine: f64, h_coarse: f64, h_fine: f64) -> Result<f64> {
    if !(e_coarse > 0.0 && e_fine > 0.0 && h_coarse > 0.0 && h_fine > 0.0) {
        return Err(Error::Domain(
            "EOC needs strictly positive errors and mesh sizes".into(),
        ));
    }
    if h_fine >= h_coarse {
        return Err(Error::Domain("EOC needs h_fine < h_coarse".into()));
    }
    Ok((e_fine / e_coarse).ln() / (h_fine / h_coarse).ln())
}

/// One refinement level of a convergence table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorRow {
    /// Mesh size (maximum edge length) at the final time.
    pub h: f64,
    pub linf_l2: f64,
    pub l2_h1: f64,
}

/// Convergence table over refinement levels, ordered by decreasing h.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorReport {
    pub rows: Vec<ErrorRow>,
}

impl ErrorReport {
    pub fn new(rows: Vec<ErrorRow>) -> Result<Self> {
        for pair in rows.windows(2) {
            if pair[1].h >= pair[0].h {
                return Err(Error::Domain("rows must be ordered by decreasing h".into()));
            }
        }
        if rows.iter().any(|r| r.linf_l2 < 0.0 || r.l2_h1 < 0.0) {
            return Err(Error::Domain("errors must be nonnegative".into()));
        }
        Ok(Self { rows })
    }

    /// EOC pairs between consecutive rows; `None` on the first row.
    pub fn eoc_columns(&self) -> Vec<(Option<f64>, Option<f64>)> {
        let mut cols = vec![(None, None)];
        for pair in self.rows.windows(2) {
            let [coarse, fine] = [pair[0], pair[1]];
            cols.push((
                eoc(coarse.linf_l2, fine.linf_l2, coarse.h, fine.h).ok(),
                eoc(coarse.l2_h1, fine.l2_h1, coarse.h, fine.h).ok(),
            ));
        }
        cols
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        use std::io::Write;
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "h,linf_l2,eoc_linf_l2,l2_h1,eoc_l2_h1")?;
        for (row, (eoc_l2, eoc_h1)) in self.rows.iter().zip(self.eoc_columns()) {
            let fmt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x}"));
            writeln!(
                out,
                "{},{},{},{},{}",
                row.h,
                row.linf_l2,
                fmt(eoc_l2),
                row.l2_h1,
                fmt(eoc_h1)
            )?;
        }
        Ok(())
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut rows = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if n == 0 {
                if line != "h,linf_l2,eoc_linf_l2,l2_h1,eoc_l2_h1" {
                    return Err(Error::Domain(format!("unexpected header: {line}")));
                }
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 5 {
                return Err(Error::Domain(format!("bad row: {line}")));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::Domain(format!("bad number {s:?}: {e}")))
            };
            rows.push(ErrorRow {
                h: parse(cols[0])?,
                linf_l2: parse(cols[1])?,
                l2_h1: parse(cols[3])?,
            });
        }
        Self::new(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::interpolate_nodal;
    use crate::geometry::{Hemiellipsoid, OscillatingDome, UnitSphere};
    use crate::manufactured::SinTXY;
    use crate::mesh::{refine_project, MacroKind};
    use nalgebra::{Matrix3, Vector3};

    struct Linear;
    impl AmbientField for Linear {
        fn value(&self, x: &Vector3<f64>, _: f64) -> f64 {
            1.0 + 2.0 * x.x - 0.5 * x.y
        }
        fn gradient(&self, _: &Vector3<f64>, _: f64) -> Vector3<f64> {
            Vector3::new(2.0, -0.5, 0.0)
        }
        fn hessian(&self, _: &Vector3<f64>, _: f64) -> Matrix3<f64> {
            Matrix3::zeros()
        }
        fn time_deriv(&self, _: &Vector3<f64>, _: f64) -> f64 {
            0.0
        }
    }

    #[test]
    fn inverse_lift_of_constant_is_constant() {
        struct One;
        impl AmbientField for One {
            fn value(&self, _: &Vector3<f64>, _: f64) -> f64 {
                1.0
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
        let mesh = refine_project(&UnitSphere, MacroKind::Octahedron, 1, 0.0).unwrap();
        let rule = TriangleQuadrature::degree2();
        let values = inverse_lift_values(&One, &UnitSphere, &mesh, 0.0, &rule).unwrap();
        assert!(values.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn inverse_lift_on_sphere_is_radial_scaling() {
        // u = x1 lifted radially: value at x_q is x_q1 / |x_q|.
        struct X1;
        impl AmbientField for X1 {
            fn value(&self, x: &Vector3<f64>, _: f64) -> f64 {
                x.x
            }
            fn gradient(&self, _: &Vector3<f64>, _: f64) -> Vector3<f64> {
                Vector3::x()
            }
            fn hessian(&self, _: &Vector3<f64>, _: f64) -> Matrix3<f64> {
                Matrix3::zeros()
            }
            fn time_deriv(&self, _: &Vector3<f64>, _: f64) -> f64 {
                0.0
            }
        }
        let mesh = refine_project(&UnitSphere, MacroKind::Octahedron, 1, 0.0).unwrap();
        let rule = TriangleQuadrature::degree2();
        let values = inverse_lift_values(&X1, &UnitSphere, &mesh, 0.0, &rule).unwrap();
        let mut idx = 0;
        for k in 0..mesh.triangle_count() {
            let [p0, p1, p2] = mesh.triangle_positions(k);
            for bary in &rule.points {
                let xq = bary[0] * p0 + bary[1] * p1 + bary[2] * p2;
                assert!((values[idx] - xq.x / xq.norm()).abs() < 1e-12);
                idx += 1;
            }
        }
    }

    #[test]
    fn flat_mesh_with_linear_field_has_zero_errors() {
        // The disc at t = 0 is flat and the lift is the identity there, so
        // the nodal interpolant of a linear field is reproduced exactly.
        let mesh = refine_project(&OscillatingDome, MacroKind::DiscFan, 2, 0.0).unwrap();
        let u = interpolate_nodal(&mesh, |x, t| Linear.value(x, t), 0.0);
        let rule = TriangleQuadrature::degree6();
        let (l2, h1) = step_errors(&u, &mesh, &Linear, &OscillatingDome, 0.0, &rule).unwrap();
        assert!(l2 < 1e-13, "L2 {l2}");
        assert!(h1 < 1e-12, "H1 {h1}");
    }

    #[test]
    fn constant_offset_shifts_l2_only() {
        let mesh = refine_project(&UnitSphere, MacroKind::Octahedron, 3, 0.0).unwrap();
        let rule = TriangleQuadrature::degree6();
        let t = 0.5;
        let exact = SinTXY;
        let u = interpolate_nodal(&mesh, |x, t| exact.value(x, t), t);
        let (l2_base, h1_base) = step_errors(&u, &mesh, &exact, &UnitSphere, t, &rule).unwrap();
        let c = 0.25;
        let shifted: Vec<f64> = u.iter().map(|v| v + c).collect();
        let (l2, h1) = step_errors(&shifted, &mesh, &exact, &UnitSphere, t, &rule).unwrap();
        let area = mesh.total_area();
        // l2^2 = l2_base^2 + c^2 |Gamma_h| (cross term vanishes only
        // approximately; interpolation error is orthogonal enough at this
        // resolution to test the dominant term).
        assert!((l2 * l2 - (l2_base * l2_base + c * c * area)).abs() < 2e-4);
        assert!((h1 - h1_base).abs() < 1e-14);
    }

    #[test]
    fn interpolant_error_orders_on_moving_benchmark() {
        let t = 0.5;
        let rule = TriangleQuadrature::degree6();
        let exact = SinTXY;
        let mut rows = Vec::new();
        for level in 2..6 {
            let mesh = refine_project(&Hemiellipsoid, MacroKind::Octahedron, level, t).unwrap();
            let u = interpolate_nodal(&mesh, |x, t| exact.value(x, t), t);
            let (l2, h1) = step_errors(&u, &mesh, &exact, &Hemiellipsoid, t, &rule).unwrap();
            rows.push((mesh.max_edge_length(), l2, h1));
        }
        for pair in rows.windows(2) {
            let l2_order = eoc(pair[0].1, pair[1].1, pair[0].0, pair[1].0).unwrap();
            let h1_order = eoc(pair[0].2, pair[1].2, pair[0].0, pair[1].0).unwrap();
            assert!((1.85..2.15).contains(&l2_order), "L2 order {l2_order}");
            assert!((0.9..1.1).contains(&h1_order), "H1 order {h1_order}");
        }
    }

    #[test]
    fn step_errors_are_robust_to_quadrature_order() {
        // Raising the error quadrature from degree 6 to degree 10 moves
        // the reported errors by well under 0.1%.
        let t = 0.5;
        let exact = SinTXY;
        for level in [2, 3, 4] {
            let mesh = refine_project(&Hemiellipsoid, MacroKind::Octahedron, level, t).unwrap();
            let u = interpolate_nodal(&mesh, |x, t| exact.value(x, t), t);
            let coarse = step_errors(
                &u,
                &mesh,
                &exact,
                &Hemiellipsoid,
                t,
                &TriangleQuadrature::degree6(),
            )
            .unwrap();
            let fine = step_errors(
                &u,
                &mesh,
                &exact,
                &Hemiellipsoid,
                t,
                &TriangleQuadrature::degree10(),
            )
            .unwrap();
            assert!(
                (coarse.0 / fine.0 - 1.0).abs() < 1e-3,
                "L2 at level {level}"
            );
            assert!(
                (coarse.1 / fine.1 - 1.0).abs() < 1e-3,
                "H1 at level {level}"
            );
        }
    }

    #[test]
    fn accumulate_norms_examples() {
        assert!(matches!(
            accumulate_norms(&[], 0.1),
            Err(Error::EmptySeries)
        ));
        let (l2, h1) = accumulate_norms(&[(0.5, 2.0)], 0.25).unwrap();
        assert_eq!(l2, 0.5);
        assert!((h1 - 0.25f64.sqrt() * 2.0).abs() < 1e-15);
        let (l2, h1) = accumulate_norms(&[(0.0, 0.0), (0.0, 0.0)], 0.1).unwrap();
        assert_eq!((l2, h1), (0.0, 0.0));
        let (l2, _) = accumulate_norms(&[(0.3, 1.0), (0.7, 1.0)], 0.1).unwrap();
        assert_eq!(l2, 0.7);
    }

    #[test]
    fn eoc_examples() {
        assert!((eoc(1.0, 0.5, 1.0, 0.5).unwrap() - 1.0).abs() < 1e-14);
        assert!((eoc(1.0, 0.25, 1.0, 0.5).unwrap() - 2.0).abs() < 1e-14);
        assert!(eoc(0.0, 0.1, 1.0, 0.5).is_err());
        assert!(eoc(0.1, 0.1, 1.0, 2.0).is_err());
    }

    #[test]
    fn eoc_is_scale_invariant() {
        // Rescaling both errors by a common factor leaves the EOC unchanged.
        use proptest::prelude::*;
        proptest!(|(e1 in 1e-8..1.0f64, e2 in 1e-8..1.0f64, scale in 1e-3..1e3f64)| {
            let base = eoc(e1, e2, 1.0, 0.5).unwrap();
            let scaled = eoc(scale * e1, scale * e2, 1.0, 0.5).unwrap();
            prop_assert!((base - scaled).abs() < 1e-9 * base.abs().max(1.0));
        });
    }

    #[test]
    fn report_roundtrips_through_csv() {
        let report = ErrorReport::new(vec![
            ErrorRow {
                h: 0.5,
                linf_l2: 0.25,
                l2_h1: 0.5,
            },
            ErrorRow {
                h: 0.25,
                linf_l2: 0.061234567890123456,
                l2_h1: 0.26,
            },
        ])
        .unwrap();
        let dir = std::env::temp_dir().join("esfem_report_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("errors.csv");
        report.write_csv(&path).unwrap();
        let back = ErrorReport::read_csv(&path).unwrap();
        assert_eq!(report, back);
        let eocs = report.eoc_columns();
        assert_eq!(eocs[0], (None, None));
        assert!((eocs[1].0.unwrap() - 2.0295).abs() < 1e-3);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn report_rejects_disordered_rows() {
        let result = ErrorReport::new(vec![
            ErrorRow {
                h: 0.25,
                linf_l2: 0.1,
                l2_h1: 0.1,
            },
            ErrorRow {
                h: 0.5,
                linf_l2: 0.2,
                l2_h1: 0.2,
            },
        ]);
        assert!(result.is_err());
    }
}
