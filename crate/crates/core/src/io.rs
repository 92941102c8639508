//! JSON encodings of operators, channels, priors and sources.
//!
//! Matrices are `{"dim": d, "re": [[...]], "im": [[...]]}` in row-major order.
//! Channels are `{"dim": d, "labels": [...], "outputs": [matrix, ...]}`,
//! priors `{"weights": [...]}` and sources `{"prior": prior, "side_info":
//! channel}`. Dimensions above [`max_dim`] are rejected.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{CqChannel, CqSource, Prior};
use crate::error::{Error, Result};
use crate::matcalc::{CMatrix, DensityOperator, HermitianOperator};

pub const DEFAULT_MAX_DIM: usize = 64;
pub const MAX_DIM_ENV: &str = "QEXP_MAX_DIM";

/// Dimension bound: `QEXP_MAX_DIM` when set to a positive integer, else 64.
pub fn max_dim() -> usize {
    std::env::var(MAX_DIM_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&d| d > 0)
        .unwrap_or(DEFAULT_MAX_DIM)
}

fn check_dim(dim: usize) -> Result<()> {
    let max = max_dim();
    if dim > max {
        return Err(Error::DimensionTooLarge { dim, max });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let d = m.nrows();
        let re = (0..d).map(|i| (0..d).map(|j| m[(i, j)].re).collect()).collect();
        let im = (0..d).map(|i| (0..d).map(|j| m[(i, j)].im).collect()).collect();
        Self { dim: d, re, im }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let d = self.dim;
        check_dim(d)?;
        for (name, rows) in [("re", &self.re), ("im", &self.im)] {
            if rows.len() != d {
                return Err(Error::Parse(format!(
                    "\"{name}\" has {} rows, expected {d}",
                    rows.len()
                )));
            }
            if let Some(r) = rows.iter().find(|r| r.len() != d) {
                return Err(Error::NotSquare {
                    rows: d,
                    cols: r.len(),
                });
            }
        }
        Ok(CMatrix::from_fn(d, d, |i, j| {
            Complex64::new(self.re[i][j], self.im[i][j])
        }))
    }

    pub fn to_hermitian(&self) -> Result<HermitianOperator> {
        HermitianOperator::new(self.to_matrix()?)
    }

    pub fn to_density(&self) -> Result<DensityOperator> {
        DensityOperator::from_matrix(self.to_matrix()?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    pub outputs: Vec<MatrixJson>,
}

impl ChannelJson {
    pub fn from_channel(ch: &CqChannel) -> Self {
        Self {
            dim: ch.output_dim(),
            labels: ch.labels().to_vec(),
            outputs: ch
                .outputs()
                .iter()
                .map(|w| MatrixJson::from_matrix(w.matrix()))
                .collect(),
        }
    }

    pub fn to_channel(&self) -> Result<CqChannel> {
        check_dim(self.dim)?;
        let mut outs = Vec::with_capacity(self.outputs.len());
        for m in &self.outputs {
            if m.dim != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: m.dim,
                });
            }
            outs.push(m.to_density()?);
        }
        if self.labels.is_empty() {
            CqChannel::new(outs)
        } else {
            CqChannel::with_labels(outs, self.labels.clone())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PriorJson {
    pub weights: Vec<f64>,
}

impl PriorJson {
    pub fn from_prior(p: &Prior) -> Self {
        Self {
            weights: p.weights().to_vec(),
        }
    }

    pub fn to_prior(&self) -> Result<Prior> {
        Prior::new(self.weights.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceJson {
    pub prior: PriorJson,
    pub side_info: ChannelJson,
}

impl SourceJson {
    pub fn from_source(s: &CqSource) -> Self {
        Self {
            prior: PriorJson::from_prior(&s.prior),
            side_info: ChannelJson::from_channel(&s.side_info),
        }
    }

    pub fn to_source(&self) -> Result<CqSource> {
        CqSource::new(self.prior.to_prior()?, self.side_info.to_channel()?)
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_matrix(text: &str) -> Result<HermitianOperator> {
    parse::<MatrixJson>(text)?.to_hermitian()
}

pub fn parse_density(text: &str) -> Result<DensityOperator> {
    parse::<MatrixJson>(text)?.to_density()
}

pub fn parse_channel(text: &str) -> Result<CqChannel> {
    parse::<ChannelJson>(text)?.to_channel()
}

pub fn parse_prior(text: &str) -> Result<Prior> {
    parse::<PriorJson>(text)?.to_prior()
}

pub fn parse_source(text: &str) -> Result<CqSource> {
    parse::<SourceJson>(text)?.to_source()
}

fn print<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

pub fn matrix_to_json(op: &HermitianOperator) -> String {
    print(&MatrixJson::from_matrix(op.matrix()))
}

pub fn channel_to_json(ch: &CqChannel) -> String {
    print(&ChannelJson::from_channel(ch))
}

pub fn prior_to_json(p: &Prior) -> String {
    print(&PriorJson::from_prior(p))
}

pub fn source_to_json(s: &CqSource) -> String {
    print(&SourceJson::from_source(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcalc::random_density;

    #[test]
    fn matrix_roundtrip_is_exact() {
        let rho = random_density(3, 2, 4).unwrap();
        let text = matrix_to_json(&rho);
        let back = parse_density(&text).unwrap();
        assert_eq!(back.matrix(), rho.matrix());
        assert_eq!(matrix_to_json(&back), text);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(matches!(parse_matrix("{\"dim\": 2"), Err(Error::Parse(_))));
        let ragged = r#"{"dim": 2, "re": [[1, 0], [0]], "im": [[0, 0], [0, 0]]}"#;
        assert!(matches!(parse_matrix(ragged), Err(Error::NotSquare { .. })));
        let non_herm = r#"{"dim": 2, "re": [[1, 1], [0, 0]], "im": [[0, 0], [0, 0]]}"#;
        assert!(matches!(parse_matrix(non_herm), Err(Error::NonHermitian(_))));
        let big = format!(
            r#"{{"dim": {d}, "re": [], "im": []}}"#,
            d = DEFAULT_MAX_DIM + 1
        );
        if std::env::var(MAX_DIM_ENV).is_err() {
            assert!(matches!(
                parse_matrix(&big),
                Err(Error::DimensionTooLarge { .. })
            ));
        }
    }

    #[test]
    fn channel_and_source_roundtrip() {
        let outs = (0..3).map(|i| random_density(2, 2, i).unwrap()).collect();
        let ch = CqChannel::new(outs).unwrap();
        let back = parse_channel(&channel_to_json(&ch)).unwrap();
        assert_eq!(back, ch);
        let src = CqSource::new(Prior::new(vec![0.2, 0.3, 0.5]).unwrap(), ch).unwrap();
        let back = parse_source(&source_to_json(&src)).unwrap();
        assert_eq!(back, src);
        let labelled = r#"{"dim": 1, "labels": ["a"], "outputs": [{"dim": 1, "re": [[1]], "im": [[0]]}]}"#;
        assert_eq!(parse_channel(labelled).unwrap().labels(), ["a".to_string()]);
    }
}
