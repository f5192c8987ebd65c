//! The schemes are solver-agnostic: a full convergence-study run gives
//! the same solution whether each linear system is solved by sparse LU or
//! by preconditioned BiCGStab.

use esfem::fem::{assemble_mass, l2_norm, pattern_of};
use esfem::geometry::Hemiellipsoid;
use esfem::manufactured::problems;
use esfem::mesh::{refine_project, MacroKind, MeshMotion};
use esfem::timestepping::{
    run_simulation, Bdf2Start, InitialData, RunOptions, Scheme, Simulation, SolverConfig,
    SolverKind, TimeGrid,
};

#[test]
fn direct_and_iterative_backends_agree_on_a_full_run() {
    let mesh = refine_project(&Hemiellipsoid, MacroKind::Octahedron, 2, 0.0).unwrap();
    let tau_max = 0.1 * mesh.max_edge_length();
    let run = |kind: SolverKind| {
        let simulation = Simulation {
            problem: problems::hemiellipsoid(true),
            initial_mesh: mesh.clone(),
            motion: MeshMotion::HemiellipsoidAle,
            scheme: Scheme::Bdf2,
            grid: TimeGrid::from_max_tau(2.0, tau_max).unwrap(),
            solver: SolverConfig {
                kind,
                tol: 1e-12,
                max_iter: 5000,
            },
            quad_degree: 6,
            initial: InitialData::ExactSolution,
            bdf2_start: Bdf2Start::ExactInterpolant,
        };
        run_simulation(&simulation, &RunOptions::default()).unwrap()
    };
    let direct = run(SolverKind::Direct);
    let krylov = run(SolverKind::BiCgStab);
    let pattern = pattern_of(&direct.final_mesh);
    let mass = assemble_mass(&direct.final_mesh, &pattern).unwrap();
    let diff: Vec<f64> = direct
        .final_u
        .iter()
        .zip(&krylov.final_u)
        .map(|(a, b)| a - b)
        .collect();
    let gap = l2_norm(&mass, &diff);
    assert!(gap <= 1e-8, "backends disagree by {gap:.3e}");
}
