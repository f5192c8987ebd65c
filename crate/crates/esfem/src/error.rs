use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Level-set gradient too small to define a normal direction.
    #[error("degenerate level-set gradient (|grad d| = {norm:.3e})")]
    DegenerateGradient { norm: f64 },

    /// Newton projection onto the surface failed to converge.
    #[error(
        "surface projection did not converge in {max_iter} iterations (residual {residual:.3e})"
    )]
    NoConvergence { max_iter: usize, residual: f64 },

    /// Closed-form evaluation requested from a motion that only supports
    /// stepwise ODE advancement.
    #[error("mesh motion has no closed-form trajectory; use lagrangian_advance")]
    WrongMotionKind,

    /// Triangle with (near-)zero area encountered during assembly or
    /// quality measurement.
    #[error("degenerate triangle {triangle} (area {area:.3e})")]
    DegenerateTriangle { triangle: usize, area: f64 },

    /// Linear solver failed to reach the requested tolerance.
    #[error("linear solver diverged: {0}")]
    SolverDiverged(String),

    /// Requested the exact solution of a problem that has none.
    #[error("problem has no exact solution")]
    NoExactSolution,

    /// Norm accumulation over an empty step series.
    #[error("empty error series")]
    EmptySeries,

    /// Invalid argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid or inconsistent run configuration.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
