//! Numerical certification suites for `qexp-core`.
//!
//! Each suite draws seeded random instances, compares the library against
//! independent oracles or checks an inequality, and returns a
//! [`CheckReport`]. [`run_all`] runs a selection of suites; reports are
//! deterministic for a fixed seed.

pub mod bounds;
pub mod instances;
pub mod oracle;
pub mod report;
pub mod search;
pub mod suites;
pub mod warm;

use thiserror::Error;

pub use bounds::EquicontinuityBound;
pub use report::{CheckReport, Tally};

#[derive(Debug, Error, PartialEq)]
pub enum CheckError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("invalid option: {0}")]
    InvalidOption(String),
}

/// The suites of a full run, in execution order.
pub const SUITES: [&str; 12] = [
    "divergence-laws",
    "classical-reduction",
    "sibson",
    "augustin-mean",
    "concavity-in-s",
    "prior-shape",
    "equicontinuity",
    "interpolation",
    "minimax",
    "entropic-duality",
    "fenchel-duality",
    "auxiliary-functions",
];

/// Parts of the combined suites that can be run on their own.
pub const SUB_SUITES: [&str; 4] = [
    "equicontinuity-renyi",
    "equicontinuity-augustin",
    "interpolation-petz",
    "interpolation-product",
];

/// Per-suite settings; `None` keeps the suite's defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Number of random instances (suite-specific unit, see each suite).
    pub trials: Option<usize>,
    /// Dimension override for suites whose instances are not tied to qubits.
    pub dim: Option<usize>,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn trials_or(&self, default: usize) -> usize {
        self.trials.unwrap_or(default).max(1)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    pub suites: Vec<String>,
    pub trials: Option<usize>,
    pub dim: Option<usize>,
}

impl Config {
    /// All twelve suites with default sizes.
    pub fn all() -> Self {
        Self {
            suites: SUITES.iter().map(|s| s.to_string()).collect(),
            ..Self::default()
        }
    }

    /// `"all"`, `"none"` or a comma-separated list of suite names.
    pub fn select(selection: &str) -> Result<Self, CheckError> {
        let selection = selection.trim();
        let suites = match selection {
            "all" => return Ok(Self::all()),
            "none" | "" => Vec::new(),
            list => {
                let names: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
                for n in &names {
                    if !is_known(n) {
                        return Err(CheckError::UnknownSuite(n.clone()));
                    }
                }
                names
            }
        };
        Ok(Self {
            suites,
            ..Self::default()
        })
    }
}

fn is_known(name: &str) -> bool {
    SUITES.contains(&name) || SUB_SUITES.contains(&name)
}

/// Runs one suite by name.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<CheckReport, CheckError> {
    use suites::*;
    Ok(match name {
        "divergence-laws" => divergence_laws::run(cfg),
        "classical-reduction" => classical::run(cfg),
        "sibson" => sibson::run(cfg),
        "augustin-mean" => augustin_mean::run(cfg),
        "concavity-in-s" => concavity::run(cfg),
        "prior-shape" => prior_shape::run(cfg),
        "equicontinuity" => equicontinuity::run(cfg),
        "equicontinuity-renyi" => equicontinuity::run_renyi(cfg),
        "equicontinuity-augustin" => equicontinuity::run_augustin(cfg),
        "interpolation" => interpolation::run(cfg),
        "interpolation-petz" => interpolation::run_petz(cfg),
        "interpolation-product" => interpolation::run_product(cfg),
        "minimax" => minimax::run(cfg),
        "entropic-duality" => duality::run_entropic(cfg),
        "fenchel-duality" => duality::run_fenchel(cfg),
        "auxiliary-functions" => auxiliary::run(cfg),
        other => return Err(CheckError::UnknownSuite(other.to_string())),
    })
}

/// Runs the selected suites in order with the given seed.
pub fn run_all(config: &Config, seed: u64) -> Result<Vec<CheckReport>, CheckError> {
    if let Some(d) = config.dim {
        if !(1..=8).contains(&d) {
            return Err(CheckError::InvalidOption(format!(
                "dimension {d} outside 1..=8"
            )));
        }
    }
    let cfg = SuiteConfig {
        seed,
        trials: config.trials,
        dim: config.dim,
    };
    config.suites.iter().map(|s| run_suite(s, &cfg)).collect()
}

/// Whether every report passed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_parsing() {
        assert!(Config::select("none").unwrap().suites.is_empty());
        assert_eq!(Config::select("all").unwrap().suites.len(), 12);
        assert_eq!(
            Config::select("sibson, auxiliary-functions").unwrap().suites,
            vec!["sibson".to_string(), "auxiliary-functions".to_string()]
        );
        assert_eq!(
            Config::select("bogus"),
            Err(CheckError::UnknownSuite("bogus".into()))
        );
    }

    #[test]
    fn empty_selection_gives_no_reports() {
        let r = run_all(&Config::select("none").unwrap(), 1).unwrap();
        assert!(r.is_empty());
        assert!(all_passed(&r));
    }
}
