//! Galerkin consistency of the manufactured problems: over one implicit
//! Euler step with `tau ~ h^2`, the weak-form residual of the nodal
//! interpolant of the exact solution, paired with interpolants of smooth
//! test functions, decays like O(h^2).
//!
//! (Pairing with smooth functions is what makes the second-order rate
//! visible: against arbitrary discrete test functions the interpolant's
//! residual is dominated by the O(h) stiffness term, which only the
//! elliptic projection removes.)

use esfem::fem::{
    assemble_advection, assemble_load, assemble_mass, assemble_stiffness, interpolate_nodal,
    pattern_of, TriangleQuadrature,
};
use esfem::geometry::Hemiellipsoid;
use esfem::manufactured::problems;
use esfem::mesh::{move_mesh, refine_project, MacroKind, MeshMotion};
use nalgebra::Vector3;

#[test]
fn interpolated_exact_solution_satisfies_weak_form_to_second_order() {
    let problem = problems::hemiellipsoid(true);
    let exact = problem.exact.clone().unwrap();
    let rule = TriangleQuadrature::degree6();
    let t0 = 0.5;

    let smooth_tests: [fn(&Vector3<f64>) -> f64; 3] = [
        |_| 1.0,
        |x| 1.0 + 0.5 * x.x - 0.25 * x.y + 0.125 * x.z,
        |x| x.x * x.y + 0.5 * x.z * x.z,
    ];

    let mut residuals = Vec::new();
    let mut sizes = Vec::new();
    for level in 2..5 {
        let mesh_at_start = {
            let initial =
                refine_project(&Hemiellipsoid, MacroKind::Octahedron, level, 0.0).unwrap();
            move_mesh(&initial, &MeshMotion::HemiellipsoidAle, t0).unwrap()
        };
        let h = mesh_at_start.max_edge_length();
        let tau = 0.02 * h * h;
        let t1 = t0 + tau;
        let mesh_new = move_mesh(&mesh_at_start, &MeshMotion::HemiellipsoidAle, t1).unwrap();

        let pattern = pattern_of(&mesh_at_start);
        let mass_old = assemble_mass(&mesh_at_start, &pattern).unwrap();
        let mass_new = assemble_mass(&mesh_new, &pattern).unwrap();
        let stiffness = assemble_stiffness(&mesh_new, &pattern).unwrap();
        let tangential: Vec<Vector3<f64>> = mesh_new
            .positions()
            .iter()
            .map(|x| problem.tangential_velocity(x, t1).unwrap())
            .collect();
        let advection = assemble_advection(&mesh_new, &pattern, &tangential).unwrap();
        let load = assemble_load(
            &mesh_new,
            problem.surface.as_ref(),
            |x, s| problem.source_value(x, s),
            t1,
            &rule,
        )
        .unwrap();

        let u_old = interpolate_nodal(&mesh_at_start, |x, t| exact.value(x, t), t0);
        let u_new = interpolate_nodal(&mesh_new, |x, t| exact.value(x, t), t1);

        // r = (M^1 U^1 - M^0 U^0)/tau + (S + B^T) U^1 - F^1
        let m1u = mass_new.apply(&u_new);
        let m0u = mass_old.apply(&u_old);
        let su = stiffness.apply(&u_new);
        let btu = advection.apply_transpose(&u_new);
        let residual: Vec<f64> = (0..u_new.len())
            .map(|i| (m1u[i] - m0u[i]) / tau + su[i] + btu[i] - load[i])
            .collect();

        let mut worst = 0.0f64;
        for phi in smooth_tests {
            let test_vec = interpolate_nodal(&mesh_new, |x, _| phi(x), t1);
            let pairing: f64 = residual.iter().zip(&test_vec).map(|(r, v)| r * v).sum();
            worst = worst.max(pairing.abs());
        }
        residuals.push(worst);
        sizes.push(h);
    }

    for i in 1..residuals.len() {
        let order = (residuals[i - 1] / residuals[i]).ln() / (sizes[i - 1] / sizes[i]).ln();
        assert!(
            order > 1.7,
            "consistency order {order} between levels (residuals {residuals:?})"
        );
    }
}
