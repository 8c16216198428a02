//! Run configuration: resolutions, tolerances, output and seed.

use crate::error::{LcError, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Lower bound a local convexity margin must exceed.
    pub margin: f64,
    pub frame: f64,
    pub lift: f64,
    pub identity: f64,
    pub degree_residual: f64,
    pub phi: f64,
    pub h_lift: f64,
    pub c0: f64,
    pub support: f64,
    pub psi_zero: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            margin: 0.0,
            frame: 1e-9,
            lift: 1e-5,
            identity: 1e-8,
            degree_residual: 0.1,
            phi: 1e-6,
            h_lift: 1e-5,
            c0: 1e-9,
            support: 1e-6,
            psi_zero: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Samples per curve for margins and lifts.
    pub samples: usize,
    /// Chart grid for flower counts.
    pub grid: [usize; 2],
    /// Chart grid and time steps of the degree integral.
    pub degree_grid: usize,
    pub loop_grid: usize,
    pub obstruction_grid: usize,
    pub tails: usize,
    /// Also run the degree at twice the resolution.
    pub long: bool,
    pub record_timing: bool,
    pub out: PathBuf,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            samples: 4096,
            grid: [128, 128],
            degree_grid: 96,
            loop_grid: 32,
            obstruction_grid: 128,
            tails: 100,
            long: false,
            record_timing: false,
            out: PathBuf::from("lconvex-out"),
            seed: 0,
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| LcError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LcError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let sizes = [
            ("samples", self.samples),
            ("grid", self.grid[0].min(self.grid[1])),
            ("degree_grid", self.degree_grid),
            ("loop_grid", self.loop_grid),
            ("obstruction_grid", self.obstruction_grid),
            ("tails", self.tails),
        ];
        if let Some((name, _)) = sizes.iter().find(|(_, v)| *v == 0) {
            return Err(LcError::Config(format!("{name} must be positive")));
        }
        if self.samples < 8 {
            return Err(LcError::Config("samples must be at least 8".into()));
        }
        let t = &self.tolerances;
        if !(t.margin >= 0.0) {
            return Err(LcError::Config(format!("margin tolerance must be non-negative, got {}", t.margin)));
        }
        let positive = [
            ("frame", t.frame),
            ("lift", t.lift),
            ("identity", t.identity),
            ("degree_residual", t.degree_residual),
            ("phi", t.phi),
            ("h_lift", t.h_lift),
            ("c0", t.c0),
            ("support", t.support),
            ("psi_zero", t.psi_zero),
        ];
        if let Some((name, v)) = positive.iter().find(|(_, v)| !(*v > 0.0 && v.is_finite())) {
            return Err(LcError::Config(format!("tolerance {name} must be positive, got {v}")));
        }
        if t.degree_residual >= 0.5 {
            return Err(LcError::Config("degree_residual must be below 0.5".into()));
        }
        Ok(())
    }
}

/// Parses `AxB`, also accepting `×`.
pub fn parse_grid(s: &str) -> Result<[usize; 2]> {
    let (a, b) = s
        .split_once(['x', 'X', '×'])
        .ok_or_else(|| LcError::Config(format!("grid `{s}` is not of the form AxB")))?;
    let p = |v: &str| v.trim().parse::<usize>().ok().filter(|&n| n > 0);
    match (p(a), p(b)) {
        (Some(a), Some(b)) => Ok([a, b]),
        _ => Err(LcError::Config(format!("grid `{s}` needs two positive integers"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn negative_margin_is_rejected() {
        let e = RunConfig::from_toml("[tolerances]\nmargin = -1.0\n").unwrap_err();
        assert!(matches!(e, LcError::Config(_)));
    }

    #[test]
    fn toml_overrides() {
        let c = RunConfig::from_toml("degree_grid = 8\ngrid = [16, 24]\nseed = 7\n").unwrap();
        assert_eq!((c.degree_grid, c.grid, c.seed), (8, [16, 24], 7));
        assert_eq!(c.samples, 4096);
        assert!(RunConfig::from_toml("bogus = 1").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("6x8").unwrap(), [6, 8]);
        assert_eq!(parse_grid("3×4").unwrap(), [3, 4]);
        assert!(parse_grid("0x4").is_err());
        assert!(parse_grid("12").is_err());
    }
}
