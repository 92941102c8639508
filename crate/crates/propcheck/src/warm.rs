//! Information values and auxiliary functions along sequences of nearby
//! problems, each inner minimization warm-started from the previous optimal
//! state.

use qexp_core::{
    information, CqChannel, DensityOperator, DivergenceKind, InfoVariant, OptimizerOptions, Prior,
    Result,
};

#[derive(Clone, Debug)]
pub struct WarmInfo {
    variant: InfoVariant,
    kind: DivergenceKind,
    opts: OptimizerOptions,
    last: Option<DensityOperator>,
}

impl WarmInfo {
    pub fn new(variant: InfoVariant, kind: DivergenceKind) -> Self {
        Self {
            variant,
            kind,
            opts: OptimizerOptions::default(),
            last: None,
        }
    }

    /// `I^{(i),(t)}_α(P, W)`; errors on an infinite value.
    pub fn info(&mut self, prior: &Prior, channel: &CqChannel, alpha: f64) -> Result<f64> {
        let mut opts = self.opts.clone();
        if let Some(w) = &self.last {
            opts.warm_starts = vec![w.clone()];
        }
        let r = information(self.variant, self.kind, prior, channel, alpha, &opts)?;
        let v = r.value.expect_finite("information")?;
        self.last = Some(r.mean);
        Ok(v)
    }

    /// `E0^{(i),(t)}(s, P) = s · I_{1/(1+s)}`.
    pub fn e0(&mut self, s: f64, prior: &Prior, channel: &CqChannel) -> Result<f64> {
        if s == 0.0 {
            channel.check_prior(prior)?;
            return Ok(0.0);
        }
        Ok(s * self.info(prior, channel, 1.0 / (1.0 + s))?)
    }

    pub fn reset(&mut self) {
        self.last = None;
    }
}
