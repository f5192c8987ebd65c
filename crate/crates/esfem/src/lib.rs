//! Finite elements for advection-diffusion of a conserved scalar on a moving
//! surface, with the mesh driven either by the material (Lagrangian) velocity
//! or by an arbitrary Lagrangian-Eulerian (ALE) velocity that adds a
//! tangential component to keep the triangulation well shaped.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`] — closed-form moving surfaces (level sets and a graph over
//!   the unit disc) and pointwise surface calculus: normals, velocities,
//!   closest-point projection, tangential gradients, Laplace-Beltrami.
//! * [`manufactured`] — exact solutions, source terms and initial conditions
//!   for the shipped benchmark problems.
//! * [`mesh`] — triangulated moving surfaces: refine-and-project
//!   construction, closed-form and ODE mesh motion, quality metrics, VTK
//!   output.
//! * [`fem`] — P1 assembly on the current triangulation: mass, stiffness and
//!   advection matrices in CSR storage, load vectors, quadrature rules.
//! * [`timestepping`] — BDF1/BDF2 solvers over the moving mesh and the
//!   linear-solver backends (sparse LU and BiCGStab).
//! * [`norms`] — lifted error norms, experimental orders of convergence and
//!   report types.
//! * [`diagnostics`] — numerical verification of the transport identity and
//!   of surface-measure convergence.
//! * [`experiments`] — config-driven runners for the four benchmark
//!   experiments, backing the `esfem` binary.

pub mod diagnostics;
mod error;
pub mod experiments;
pub mod fem;
pub mod geometry;
pub mod manufactured;
pub mod mesh;
pub mod norms;
pub mod timestepping;

pub use error::{Error, Result};
