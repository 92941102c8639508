//! Priors, classical-quantum channels and classical-quantum sources.

use crate::error::{Error, Result};
use crate::matcalc::{direct_sum, DensityOperator, HermitianOperator, Spectrum};

/// Tolerance on `Σ P(x) = 1`.
pub const PRIOR_SUM_TOL: f64 = 1e-12;

/// A probability vector on a finite alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct Prior {
    weights: Vec<f64>,
}

impl Prior {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidPrior("empty alphabet".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidPrior(format!(
                "weight {w} is not a probability"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > PRIOR_SUM_TOL {
            return Err(Error::InvalidPrior(format!("weights sum to {sum}")));
        }
        Ok(Self { weights })
    }

    /// Rescales nonnegative weights to unit sum.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0) || !sum.is_finite() || weights.iter().any(|w| !(*w >= 0.0)) {
            return Err(Error::InvalidPrior("weights cannot be normalized".into()));
        }
        Ok(Self {
            weights: weights.iter().map(|w| w / sum).collect(),
        })
    }

    pub fn uniform(k: usize) -> Self {
        Self {
            weights: vec![1.0 / k as f64; k],
        }
    }

    pub fn point_mass(k: usize, x: usize) -> Self {
        let mut weights = vec![0.0; k];
        weights[x] = 1.0;
        Self { weights }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Shannon entropy in nats.
    pub fn entropy(&self) -> f64 {
        -self
            .weights
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p * p.ln())
            .sum::<f64>()
    }

    /// Rényi entropy `1/(1−α) · log Σ P^α` (α = 1 gives the Shannon entropy).
    pub fn renyi_entropy(&self, alpha: f64) -> f64 {
        if alpha == 1.0 {
            return self.entropy();
        }
        let s: f64 = self
            .weights
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p.powf(alpha))
            .sum();
        s.ln() / (1.0 - alpha)
    }

    /// Relative entropy `D(self‖other)`, `+inf` without absolute continuity.
    pub fn relative_entropy(&self, other: &Prior) -> f64 {
        let mut d = 0.0;
        for (&p, &q) in self.weights.iter().zip(&other.weights) {
            if p > 0.0 {
                if q <= 0.0 {
                    return f64::INFINITY;
                }
                d += p * (p / q).ln();
            }
        }
        d
    }

    pub fn l1_distance(&self, other: &Prior) -> f64 {
        self.weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }

    /// `(1 − t)·self + t·other`.
    pub fn mix(&self, other: &Prior, t: f64) -> Prior {
        Prior {
            weights: self
                .weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| (1.0 - t) * a + t * b)
                .collect(),
        }
    }
}

/// A classical-quantum channel `x ↦ W_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct CqChannel {
    outputs: Vec<DensityOperator>,
    labels: Vec<String>,
}

impl CqChannel {
    pub fn new(outputs: Vec<DensityOperator>) -> Result<Self> {
        let labels = (0..outputs.len()).map(|i| format!("x{i}")).collect();
        Self::with_labels(outputs, labels)
    }

    pub fn with_labels(outputs: Vec<DensityOperator>, labels: Vec<String>) -> Result<Self> {
        let first = outputs
            .first()
            .ok_or_else(|| Error::InvalidParameter("channel without inputs".into()))?;
        let dim = first.dim();
        for w in &outputs {
            if w.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: w.dim(),
                });
            }
        }
        if labels.len() != outputs.len() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} outputs",
                labels.len(),
                outputs.len()
            )));
        }
        Ok(Self { outputs, labels })
    }

    pub fn outputs(&self) -> &[DensityOperator] {
        &self.outputs
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn input_size(&self) -> usize {
        self.outputs.len()
    }

    pub fn output_dim(&self) -> usize {
        self.outputs[0].dim()
    }

    pub fn check_prior(&self, prior: &Prior) -> Result<()> {
        if prior.len() != self.input_size() {
            return Err(Error::DimensionMismatch {
                expected: self.input_size(),
                found: prior.len(),
            });
        }
        Ok(())
    }

    /// Output state `PW = Σ P(x) W_x`.
    pub fn average(&self, prior: &Prior) -> Result<DensityOperator> {
        self.check_prior(prior)?;
        let mut acc = HermitianOperator::zero(self.output_dim());
        for (w, &p) in self.outputs.iter().zip(prior.weights()) {
            if p > 0.0 {
                acc = &acc + &w.scale(p);
            }
        }
        Ok(DensityOperator::trusted(acc))
    }
}

/// A classical-quantum source: prior on `X` and side information `x ↦ ρ_x`.
#[derive(Clone, Debug, PartialEq)]
pub struct CqSource {
    pub prior: Prior,
    pub side_info: CqChannel,
}

impl CqSource {
    pub fn new(prior: Prior, side_info: CqChannel) -> Result<Self> {
        side_info.check_prior(&prior)?;
        Ok(Self { prior, side_info })
    }

    /// `ρ_XB = Σ P(x) |x⟩⟨x| ⊗ ρ_x`.
    pub fn joint_state(&self) -> Result<DensityOperator> {
        joint_state(&self.prior, &self.side_info)
    }
}

/// `P∘W = Σ P(x) |x⟩⟨x| ⊗ W_x`, with the classical register as the outer
/// tensor factor.
pub fn joint_state(prior: &Prior, channel: &CqChannel) -> Result<DensityOperator> {
    channel.check_prior(prior)?;
    let blocks: Vec<HermitianOperator> = channel
        .outputs()
        .iter()
        .zip(prior.weights())
        .map(|(w, &p)| w.scale(p))
        .collect();
    Ok(DensityOperator::trusted(direct_sum(&blocks)))
}

/// `Σ c(x) |x⟩⟨x| ⊗ σ` for nonnegative coefficients `c`.
pub fn classical_product(coeffs: &[f64], sigma: &HermitianOperator) -> HermitianOperator {
    let blocks: Vec<HermitianOperator> = coeffs.iter().map(|&p| sigma.scale(p)).collect();
    direct_sum(&blocks)
}

/// Channel outputs with positive prior weight, pre-diagonalized.
#[derive(Clone, Debug)]
pub(crate) struct Prepared {
    pub weights: Vec<f64>,
    pub spectra: Vec<Spectrum>,
    pub states: Vec<DensityOperator>,
    pub dim: usize,
}

impl Prepared {
    pub fn new(prior: &Prior, channel: &CqChannel) -> Result<Self> {
        channel.check_prior(prior)?;
        let mut weights = Vec::new();
        let mut spectra = Vec::new();
        let mut states = Vec::new();
        for (w, &p) in channel.outputs().iter().zip(prior.weights()) {
            if p > 0.0 {
                weights.push(p);
                spectra.push(Spectrum::of(w, None)?);
                states.push(w.clone());
            }
        }
        Ok(Self {
            weights,
            spectra,
            states,
            dim: channel.output_dim(),
        })
    }

    pub fn average(&self) -> DensityOperator {
        let mut acc = HermitianOperator::zero(self.dim);
        for (w, &p) in self.states.iter().zip(&self.weights) {
            acc = &acc + &w.scale(p);
        }
        DensityOperator::trusted(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prior_validation() {
        assert!(Prior::new(vec![0.5, 0.5]).is_ok());
        assert!(Prior::new(vec![0.5, 0.6]).is_err());
        assert!(Prior::new(vec![1.5, -0.5]).is_err());
        assert!(Prior::new(vec![]).is_err());
    }

    #[test]
    fn entropies() {
        let p = Prior::uniform(4);
        assert!((p.entropy() - 4f64.ln()).abs() < 1e-15);
        assert!((p.renyi_entropy(2.0) - 4f64.ln()).abs() < 1e-15);
        let q = Prior::new(vec![0.25, 0.75]).unwrap();
        let expected = -(0.25f64.powi(2) + 0.75f64.powi(2)).ln();
        assert!((q.renyi_entropy(2.0) - expected).abs() < 1e-15);
    }

    #[test]
    fn joint_state_layout() {
        let w0 = DensityOperator::diagonal(&[1.0, 0.0]).unwrap();
        let w1 = DensityOperator::diagonal(&[0.0, 1.0]).unwrap();
        let ch = CqChannel::new(vec![w0, w1]).unwrap();
        let p = Prior::new(vec![0.25, 0.75]).unwrap();
        let j = joint_state(&p, &ch).unwrap();
        assert_eq!(j.dim(), 4);
        assert!((j.matrix()[(0, 0)].re - 0.25).abs() < 1e-15);
        assert!((j.matrix()[(3, 3)].re - 0.75).abs() < 1e-15);
    }

    #[test]
    fn channel_dimension_mismatch() {
        let w0 = DensityOperator::maximally_mixed(2);
        let w1 = DensityOperator::maximally_mixed(3);
        assert!(matches!(
            CqChannel::new(vec![w0, w1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
