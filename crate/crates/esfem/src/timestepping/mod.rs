//! BDF1 and BDF2 fully discrete solvers over the moving mesh.
//!
//! Matrix-vector form of one step (homogeneous case), with `M`, `S` the
//! mass and stiffness matrices and `B` the advection matrix of the
//! interpolated tangential velocity:
//!
//! ```text
//! BDF1:  (M^{n+1} + tau (S + B^T)^{n+1}) U^{n+1} = M^n U^n + tau F^{n+1}
//! BDF2:  (3/2 M^{n+1} + tau (S + B^T)^{n+1}) U^{n+1}
//!            = 2 M^n U^n - 1/2 M^{n-1} U^{n-1} + tau F^{n+1}
//! ```
//!
//! The advection matrix enters transposed: in the variational schemes the
//! tangential term carries the gradient on the *test* function, so row i
//! receives `integral U_h T_h . grad chi_i`. Testing with the constant
//! vector then hits `B 1 = 0`, which is what makes the discrete mass
//! `1^T M^n U^n` exactly conserved on closed surfaces.

mod solver;

pub use solver::{solve_linear, DirectFactor, SolverConfig, SolverKind, DIRECT_SIZE_LIMIT};

use crate::fem::{
    assemble_advection, assemble_load, assemble_mass, assemble_stiffness, discrete_mass,
    interpolate_nodal, l2_norm, pattern_of, SparseMatrix, TriangleQuadrature,
};
use crate::manufactured::{ManufacturedProblem, SourceTerm};
use crate::mesh::{quality_metrics, write_vtk, MeshMotion, QualityReport, SurfaceMesh};
use crate::norms::{accumulate_norms, step_errors};
use crate::{Error, Result};
use nalgebra::Vector3;
use std::path::PathBuf;

/// Uniform time grid on `[0, T]`.
#[derive(Clone, Copy, Debug)]
pub struct TimeGrid {
    final_time: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(final_time: f64, steps: usize) -> Result<Self> {
        if !(final_time > 0.0) || steps == 0 {
            return Err(Error::Domain("time grid needs T > 0 and N >= 1".into()));
        }
        Ok(Self { final_time, steps })
    }

    /// Smallest uniform grid whose step does not exceed `tau_max`.
    pub fn from_max_tau(final_time: f64, tau_max: f64) -> Result<Self> {
        if !(tau_max > 0.0) {
            return Err(Error::Domain("tau must be positive".into()));
        }
        Self::new(final_time, (final_time / tau_max).ceil() as usize)
    }

    pub fn tau(&self) -> f64 {
        self.final_time / self.steps as f64
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn final_time(&self) -> f64 {
        self.final_time
    }

    pub fn node(&self, n: usize) -> f64 {
        n as f64 * self.tau()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Bdf1,
    Bdf2,
}

/// System matrix `c M + tau (S + B^T)`.
pub fn scheme_matrix(
    mass_coeff: f64,
    mass: &SparseMatrix,
    stiffness: &SparseMatrix,
    advection: Option<&SparseMatrix>,
    tau: f64,
) -> SparseMatrix {
    let mut a = mass.clone();
    a.scale(mass_coeff);
    a.axpy(tau, stiffness);
    if let Some(b) = advection {
        a.axpy(tau, &b.transpose());
    }
    a
}

fn add_load(mut rhs: Vec<f64>, tau: f64, load: Option<&[f64]>) -> Vec<f64> {
    if let Some(f) = load {
        for (r, fi) in rhs.iter_mut().zip(f) {
            *r += tau * fi;
        }
    }
    rhs
}

/// One implicit Euler step; `prev_mass_u` is `M^n U^n`.
pub fn bdf1_step(
    mass_new: &SparseMatrix,
    stiffness_new: &SparseMatrix,
    advection_new: Option<&SparseMatrix>,
    prev_mass_u: &[f64],
    tau: f64,
    load: Option<&[f64]>,
    solver: &SolverConfig,
) -> Result<Vec<f64>> {
    let a = scheme_matrix(1.0, mass_new, stiffness_new, advection_new, tau);
    let rhs = add_load(prev_mass_u.to_vec(), tau, load);
    solve_linear(&a, &rhs, solver)
}

/// One BDF2 step; `mass_u_n` and `mass_u_nm1` are `M^n U^n` and
/// `M^{n-1} U^{n-1}`.
#[allow(clippy::too_many_arguments)]
pub fn bdf2_step(
    mass_new: &SparseMatrix,
    stiffness_new: &SparseMatrix,
    advection_new: Option<&SparseMatrix>,
    mass_u_n: &[f64],
    mass_u_nm1: &[f64],
    tau: f64,
    load: Option<&[f64]>,
    solver: &SolverConfig,
) -> Result<Vec<f64>> {
    let a = scheme_matrix(1.5, mass_new, stiffness_new, advection_new, tau);
    let rhs: Vec<f64> = mass_u_n
        .iter()
        .zip(mass_u_nm1)
        .map(|(zn, znm1)| 2.0 * zn - 0.5 * znm1)
        .collect();
    let rhs = add_load(rhs, tau, load);
    solve_linear(&a, &rhs, solver)
}

/// Initial coefficient vector of a run.
#[derive(Clone)]
pub enum InitialData {
    /// Nodal interpolant of the problem's exact solution at t = 0.
    ExactSolution,
    /// Nodal interpolant of a function.
    Nodal(std::sync::Arc<dyn Fn(&Vector3<f64>, f64) -> f64 + Send + Sync>),
    /// Explicit coefficient vector.
    Vector(Vec<f64>),
}

/// How the BDF2 starting value `U^1` is produced.
#[derive(Clone, Copy, Debug)]
pub enum Bdf2Start {
    /// Interpolant of the exact solution at `t^1` (used whenever an exact
    /// solution is available).
    ExactInterpolant,
    /// Implicit Euler from `t^0` to `t^1` with the given number of
    /// substeps; preserves the discrete mass exactly.
    Bdf1 { substeps: usize },
}

/// A fully specified run.
#[derive(Clone)]
pub struct Simulation {
    pub problem: ManufacturedProblem,
    pub initial_mesh: SurfaceMesh,
    pub motion: MeshMotion,
    pub scheme: Scheme,
    pub grid: TimeGrid,
    pub solver: SolverConfig,
    pub quad_degree: usize,
    pub initial: InitialData,
    pub bdf2_start: Bdf2Start,
}

/// Where VTK snapshots go.
#[derive(Clone, Debug)]
pub struct VtkSink {
    pub dir: PathBuf,
    pub run_name: String,
}

/// Optional per-run recordings.
#[derive(Clone, Default)]
pub struct RunOptions {
    pub record_mass: bool,
    /// Per-step lifted errors (needs an exact solution).
    pub record_errors: bool,
    pub record_quality: bool,
    /// Store the coefficient vector every `k` steps (including step 0).
    pub record_every: Option<usize>,
    /// Reference vectors (step -> coefficients) to compare against in the
    /// current run's L2(Gamma_h(t)) norm.
    pub reference: Option<Vec<(usize, Vec<f64>)>>,
    /// Times at which to write VTK snapshots (matched to nearest step).
    pub snapshot_times: Vec<f64>,
    pub vtk: Option<VtkSink>,
}

/// Everything a run produces.
pub struct RunOutput {
    /// (step, time, discrete mass 1^T M U).
    pub mass_series: Vec<(usize, f64, f64)>,
    /// (time, L2 error, H1 error) for the steps entering the norms.
    pub error_series: Vec<(f64, f64, f64)>,
    /// (sup_n L2, tau-weighted H1 accumulation), when errors recorded.
    pub norms: Option<(f64, f64)>,
    pub quality_series: Vec<QualityReport>,
    /// (step, time, coefficients) at the requested cadence.
    pub recorded: Vec<(usize, f64, Vec<f64>)>,
    /// (time, ||U - U_ref||_{L2(Gamma_h(t))}) at reference steps.
    pub diff_series: Vec<(f64, f64)>,
    pub final_mesh: SurfaceMesh,
    pub final_u: Vec<f64>,
}

struct Recorder<'a> {
    options: &'a RunOptions,
    simulation: &'a Simulation,
    rule: TriangleQuadrature,
    snapshot_steps: Vec<(usize, f64)>,
    output: RunOutput,
    error_start: usize,
}

impl<'a> Recorder<'a> {
    fn new(
        options: &'a RunOptions,
        simulation: &'a Simulation,
        initial_mesh: &SurfaceMesh,
    ) -> Self {
        let tau = simulation.grid.tau();
        let snapshot_steps = options
            .snapshot_times
            .iter()
            .map(|&s| ((s / tau).round() as usize, s))
            .collect();
        Self {
            options,
            simulation,
            rule: TriangleQuadrature::with_degree(simulation.quad_degree),
            snapshot_steps,
            output: RunOutput {
                mass_series: Vec::new(),
                error_series: Vec::new(),
                norms: None,
                quality_series: Vec::new(),
                recorded: Vec::new(),
                diff_series: Vec::new(),
                final_mesh: initial_mesh.clone(),
                final_u: Vec::new(),
            },
            error_start: match simulation.scheme {
                Scheme::Bdf1 => 1,
                Scheme::Bdf2 => 2,
            },
        }
    }

    fn record(
        &mut self,
        step: usize,
        time: f64,
        mesh: &SurfaceMesh,
        mass: &SparseMatrix,
        u: &[f64],
    ) -> Result<()> {
        if self.options.record_mass {
            self.output
                .mass_series
                .push((step, time, discrete_mass(mass, u)));
        }
        if self.options.record_quality {
            self.output.quality_series.push(quality_metrics(mesh)?);
        }
        if self.options.record_errors && step >= self.error_start {
            if let Some(exact) = &self.simulation.problem.exact {
                let (l2, h1) = step_errors(
                    u,
                    mesh,
                    exact.as_ref(),
                    self.simulation.problem.surface.as_ref(),
                    time,
                    &self.rule,
                )?;
                self.output.error_series.push((time, l2, h1));
            }
        }
        if let Some(every) = self.options.record_every {
            if step % every == 0 {
                self.output.recorded.push((step, time, u.to_vec()));
            }
        }
        if let Some(reference) = &self.options.reference {
            if let Some((_, u_ref)) = reference.iter().find(|(s, _)| *s == step) {
                let diff: Vec<f64> = u.iter().zip(u_ref).map(|(a, b)| a - b).collect();
                self.output.diff_series.push((time, l2_norm(mass, &diff)));
            }
        }
        if let Some(sink) = &self.options.vtk {
            for &(snap_step, _) in &self.snapshot_steps {
                if snap_step == step {
                    let path = sink.dir.join(format!("{}_{step}.vtk", sink.run_name));
                    let mut fields: Vec<(&str, &[f64])> = vec![("solution", u)];
                    let nodal_error: Vec<f64>;
                    if let Some(exact) = &self.simulation.problem.exact {
                        nodal_error = mesh
                            .positions()
                            .iter()
                            .zip(u)
                            .map(|(x, &v)| (v - exact.value(x, time)).abs())
                            .collect();
                        fields.push(("error", &nodal_error));
                        write_vtk(mesh, &sink.run_name, &fields, &path)?;
                    } else {
                        write_vtk(mesh, &sink.run_name, &fields, &path)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// March the scheme over the moving mesh, reassembling per step.
pub fn run_simulation(simulation: &Simulation, options: &RunOptions) -> Result<RunOutput> {
    let problem = &simulation.problem;
    let grid = simulation.grid;
    let tau = grid.tau();
    let initial_mesh = &simulation.initial_mesh;
    let pattern = pattern_of(initial_mesh);
    let rule = TriangleQuadrature::with_degree(simulation.quad_degree);
    let mut recorder = Recorder::new(options, simulation, initial_mesh);

    let interpolate_initial = |mesh: &SurfaceMesh| -> Result<Vec<f64>> {
        match &simulation.initial {
            InitialData::ExactSolution => {
                let exact = problem.exact.as_ref().ok_or(Error::NoExactSolution)?;
                Ok(interpolate_nodal(mesh, |x, t| exact.value(x, t), 0.0))
            }
            InitialData::Nodal(f) => Ok(interpolate_nodal(mesh, |x, t| f(x, t), 0.0)),
            InitialData::Vector(v) => {
                if v.len() != mesh.vertex_count() {
                    return Err(Error::Config(format!(
                        "initial vector length {} does not match vertex count {}",
                        v.len(),
                        mesh.vertex_count()
                    )));
                }
                Ok(v.clone())
            }
        }
    };

    // Assemble everything needed at one time level.
    let assemble_at = |mesh: &SurfaceMesh,
                       t: f64|
     -> Result<(
        SparseMatrix,
        SparseMatrix,
        Option<SparseMatrix>,
        Option<Vec<f64>>,
    )> {
        let mass = assemble_mass(mesh, &pattern)?;
        let stiffness = assemble_stiffness(mesh, &pattern)?;
        let advection = match &problem.ale_velocity {
            None => None,
            Some(_) => {
                let nodal: Result<Vec<Vector3<f64>>> = mesh
                    .positions()
                    .iter()
                    .map(|x| problem.tangential_velocity(x, t))
                    .collect();
                Some(assemble_advection(mesh, &pattern, &nodal?)?)
            }
        };
        let load = match &problem.source {
            SourceTerm::None => None,
            _ => Some(assemble_load(
                mesh,
                problem.surface.as_ref(),
                |x, s| problem.source_value(x, s),
                t,
                &rule,
            )?),
        };
        Ok((mass, stiffness, advection, load))
    };

    let mut mesh_n = initial_mesh.clone();
    let mut u_n = interpolate_initial(&mesh_n)?;
    let mass0 = assemble_mass(&mesh_n, &pattern)?;
    recorder.record(0, 0.0, &mesh_n, &mass0, &u_n)?;
    let mut mass_u_n = mass0.apply(&u_n);
    let mut mass_u_nm1 = Vec::new();

    let mut first_step = 0usize;
    if simulation.scheme == Scheme::Bdf2 {
        if grid.steps() < 2 {
            return Err(Error::Domain("BDF2 needs at least two steps".into()));
        }
        let t1 = grid.node(1);
        let mesh1 = simulation.motion.advance(initial_mesh, &mesh_n, t1)?;
        let u1 = match simulation.bdf2_start {
            Bdf2Start::ExactInterpolant => {
                let exact = problem.exact.as_ref().ok_or(Error::NoExactSolution)?;
                interpolate_nodal(&mesh1, |x, t| exact.value(x, t), t1)
            }
            Bdf2Start::Bdf1 { substeps } => {
                let substeps = substeps.max(1);
                let sub = tau / substeps as f64;
                let mut mesh_sub = mesh_n.clone();
                let mut mass_u_sub = mass_u_n.clone();
                let mut u_sub = u_n.clone();
                for j in 1..=substeps {
                    let t_sub = if j == substeps { t1 } else { j as f64 * sub };
                    let next = simulation.motion.advance(initial_mesh, &mesh_sub, t_sub)?;
                    let (mass, stiffness, advection, load) = assemble_at(&next, t_sub)?;
                    u_sub = bdf1_step(
                        &mass,
                        &stiffness,
                        advection.as_ref(),
                        &mass_u_sub,
                        sub,
                        load.as_deref(),
                        &simulation.solver,
                    )?;
                    mass_u_sub = mass.apply(&u_sub);
                    mesh_sub = next;
                }
                u_sub
            }
        };
        let mass1 = assemble_mass(&mesh1, &pattern)?;
        recorder.record(1, t1, &mesh1, &mass1, &u1)?;
        mass_u_nm1 = std::mem::replace(&mut mass_u_n, mass1.apply(&u1));
        mesh_n = mesh1;
        u_n = u1;
        first_step = 1;
    }

    for n in first_step..grid.steps() {
        let t_next = grid.node(n + 1);
        let mesh_next = simulation.motion.advance(initial_mesh, &mesh_n, t_next)?;
        let (mass, stiffness, advection, load) = assemble_at(&mesh_next, t_next)?;
        let u_next = match simulation.scheme {
            Scheme::Bdf1 => bdf1_step(
                &mass,
                &stiffness,
                advection.as_ref(),
                &mass_u_n,
                tau,
                load.as_deref(),
                &simulation.solver,
            )?,
            Scheme::Bdf2 => bdf2_step(
                &mass,
                &stiffness,
                advection.as_ref(),
                &mass_u_n,
                &mass_u_nm1,
                tau,
                load.as_deref(),
                &simulation.solver,
            )?,
        };
        recorder.record(n + 1, t_next, &mesh_next, &mass, &u_next)?;
        mass_u_nm1 = std::mem::replace(&mut mass_u_n, mass.apply(&u_next));
        mesh_n = mesh_next;
        u_n = u_next;
    }

    let mut output = recorder.output;
    if options.record_errors && !output.error_series.is_empty() {
        let series: Vec<(f64, f64)> = output.error_series.iter().map(|e| (e.1, e.2)).collect();
        output.norms = Some(accumulate_norms(&series, tau)?);
    }
    output.final_mesh = mesh_n;
    output.final_u = u_n;
    Ok(output)
}
