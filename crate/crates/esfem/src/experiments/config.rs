//! JSON run configuration shared by all four benchmark experiments.

use crate::timestepping::{SolverConfig, SolverKind};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Mesh follows the material (normal) velocity.
    Lagrangian,
    /// Mesh follows the prescribed ALE velocity.
    Ale,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Lagrangian => write!(f, "lagrangian"),
            Mode::Ale => write!(f, "ale"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TauKind {
    /// `tau = constant * h` (h of the initial mesh).
    H,
    /// `tau = constant * h^2`.
    H2,
    /// `tau = constant`.
    Fixed,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TauCoupling {
    pub kind: TauKind,
    pub constant: f64,
}

impl TauCoupling {
    pub fn fixed(tau: f64) -> Self {
        Self {
            kind: TauKind::Fixed,
            constant: tau,
        }
    }

    pub fn of_h(constant: f64) -> Self {
        Self {
            kind: TauKind::H,
            constant,
        }
    }

    /// Timestep bound for a mesh of size `h`.
    pub fn tau_for(&self, h: f64) -> f64 {
        match self.kind {
            TauKind::H => self.constant * h,
            TauKind::H2 => self.constant * h * h,
            TauKind::Fixed => self.constant,
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
pub enum SolverKindSetting {
    Auto,
    Direct,
    Bicgstab,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSettings {
    pub kind: SolverKindSetting,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            kind: SolverKindSetting::Auto,
            tol: 1e-10,
            max_iter: 2000,
        }
    }
}

impl From<SolverSettings> for SolverConfig {
    fn from(s: SolverSettings) -> Self {
        SolverConfig {
            kind: match s.kind {
                SolverKindSetting::Auto => SolverKind::Auto,
                SolverKindSetting::Direct => SolverKind::Direct,
                SolverKindSetting::Bicgstab => SolverKind::BiCgStab,
            },
            tol: s.tol,
            max_iter: s.max_iter,
        }
    }
}

/// One experiment run. Optional fields fall back to per-example defaults
/// (see the runner documentation).
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Which benchmark to run (1-4).
    pub example: u8,
    #[serde(default)]
    pub mode: Option<Mode>,
    /// Refinement levels of the macro mesh.
    #[serde(default)]
    pub levels: Option<Vec<usize>>,
    #[serde(default)]
    pub tau_coupling: Option<TauCoupling>,
    #[serde(default)]
    pub solver: SolverSettings,
    #[serde(default)]
    pub quadrature_degree: Option<usize>,
    pub output_dir: PathBuf,
    /// Times at which VTK snapshots are written.
    #[serde(default)]
    pub snapshots: Option<Vec<f64>>,
    #[serde(default)]
    pub final_time: Option<f64>,
    /// Initial-condition variants for the long-time experiment.
    #[serde(default)]
    pub variants: Option<Vec<usize>>,
    /// RK4 substeps per PDE step for ODE-driven mesh motion.
    #[serde(default)]
    pub rk4_substeps: Option<usize>,
    /// Sampling interval (in time units) of the long-time difference
    /// series.
    #[serde(default)]
    pub record_cadence: Option<f64>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=4).contains(&self.example) {
            return Err(Error::Config(format!(
                "example must be 1..=4, got {}",
                self.example
            )));
        }
        if let Some(levels) = &self.levels {
            if levels.is_empty() {
                return Err(Error::Config("levels must not be empty".into()));
            }
        }
        if let Some(t) = self.final_time {
            if !(t > 0.0) {
                return Err(Error::Config("final_time must be positive".into()));
            }
        }
        if let Some(tc) = &self.tau_coupling {
            if !(tc.constant > 0.0) {
                return Err(Error::Config("tau constant must be positive".into()));
            }
        }
        if let Some(variants) = &self.variants {
            if variants.iter().any(|v| !(1..=4).contains(v)) {
                return Err(Error::Config("variants must be within 1..=4".into()));
            }
        }
        if !(self.solver.tol > 0.0) {
            return Err(Error::Config("solver tol must be positive".into()));
        }
        Ok(())
    }

    /// Basic config for an example with everything defaulted.
    pub fn for_example(example: u8, output_dir: PathBuf) -> Self {
        Self {
            example,
            mode: None,
            levels: None,
            tau_coupling: None,
            solver: SolverSettings::default(),
            quadrature_degree: None,
            output_dir,
            snapshots: None,
            final_time: None,
            variants: None,
            rk4_substeps: None,
            record_cadence: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let json = r#"{
            "example": 1,
            "mode": "ale",
            "levels": [2, 3, 4],
            "tau_coupling": {"kind": "h", "constant": 0.1},
            "solver": {"kind": "direct", "tol": 1e-10, "max_iter": 500},
            "quadrature_degree": 6,
            "output_dir": "/tmp/out",
            "snapshots": [0.5, 1.0],
            "final_time": 2.0
        }"#;
        let config = RunConfig::from_json(json).unwrap();
        assert_eq!(config.example, 1);
        assert_eq!(config.mode, Some(Mode::Ale));
        assert_eq!(config.levels.as_deref(), Some(&[2, 3, 4][..]));
        assert!((config.tau_coupling.unwrap().tau_for(0.5) - 0.05).abs() < 1e-15);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_values() {
        assert!(RunConfig::from_json(r#"{"example": 1, "output_dir": "o", "bogus": 3}"#).is_err());
        assert!(RunConfig::from_json(r#"{"example": 7, "output_dir": "o"}"#).is_err());
        assert!(
            RunConfig::from_json(r#"{"example": 4, "output_dir": "o", "variants": [5]}"#).is_err()
        );
        assert!(
            RunConfig::from_json(r#"{"example": 1, "output_dir": "o", "final_time": -1.0}"#)
                .is_err()
        );
    }

    #[test]
    fn tau_coupling_kinds() {
        let h = TauCoupling {
            kind: TauKind::H,
            constant: 0.1,
        };
        assert!((h.tau_for(0.2) - 0.02).abs() < 1e-16);
        let h2 = TauCoupling {
            kind: TauKind::H2,
            constant: 0.1,
        };
        assert!((h2.tau_for(0.2) - 0.004).abs() < 1e-16);
        let fixed = TauCoupling::fixed(1e-3);
        assert_eq!(fixed.tau_for(123.0), 1e-3);
    }
}
