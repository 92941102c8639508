//! Output plumbing: run manifests, CSV curves and error classification.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use qexp_core::ExtendedValue;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numerical(String),
    #[error("one or more suites failed")]
    ChecksFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed => 1,
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<qexp_core::Error> for CliError {
    fn from(e: qexp_core::Error) -> Self {
        use qexp_core::Error as E;
        match e {
            E::NonConvergence { .. } | E::Numerical(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<qexp_propcheck::CheckError> for CliError {
    fn from(e: qexp_propcheck::CheckError) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Everything needed to replay a run.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub tool_version: String,
}

impl RunManifest {
    pub fn new(command: &str, inputs: &[&Path], seed: u64) -> Self {
        Self {
            command: command.to_string(),
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
            parameters: BTreeMap::new(),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

/// Writes `text` to `out` or stdout.
pub fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Input(e.to_string()))
        }
    }
}

/// Sidecar path: explicit `--manifest`, else `<out>.manifest.json`.
pub fn manifest_path(out: Option<&Path>, manifest: Option<&Path>) -> Option<PathBuf> {
    manifest.map(Path::to_path_buf).or_else(|| {
        out.map(|o| {
            let mut s = o.as_os_str().to_owned();
            s.push(".manifest.json");
            PathBuf::from(s)
        })
    })
}

pub fn format_value(v: ExtendedValue) -> String {
    v.to_string()
}

/// One CSV row: `x, value, argmax_s, unbounded`.
pub struct CurveRow {
    pub x: f64,
    pub value: ExtendedValue,
    pub argmax_s: Option<f64>,
    pub unbounded: bool,
}

pub fn curve_csv(x_name: &str, rows: &[CurveRow]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Input(e.to_string());
    w.write_record([x_name, "value", "argmax_s", "unbounded"]).map_err(err)?;
    for r in rows {
        w.write_record([
            r.x.to_string(),
            format_value(r.value),
            r.argmax_s.map(|s| s.to_string()).unwrap_or_default(),
            r.unbounded.to_string(),
        ])
        .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}
