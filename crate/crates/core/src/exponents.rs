//! Auxiliary functions `E0` and error exponents of classical-quantum channels
//! and sources.
//!
//! For a channel, `E0^{(i),(t)}(s, P) = s · I^{(i),(t)}_{1/(1+s)}(P, W)` for
//! `s > −1`. The exponents take the Fenchel–Legendre transform of the
//! pointwise maximum of the Petz and sandwiched Augustin auxiliary functions.
//! Because the sandwiched divergence never exceeds the Petz one, that maximum
//! is the Petz branch for `s ≥ 0` and the sandwiched branch for `s < 0`; only
//! the dominating branch is evaluated.

use std::cell::RefCell;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::channel::{CqChannel, CqSource, Prepared, Prior};
use crate::divergence::{renyi_block, BlockWeights, DivergenceKind, ExtendedValue};
use crate::error::{Error, Result};
use crate::information::{
    holevo_information, information, near_one, petz_renyi_prepared, quadratic_near_one,
    InfoVariant, MeanResult, OptimizerOptions, NEAR_ONE,
};
use crate::matcalc::{mpow, DensityOperator, HermitianOperator};
use crate::optim::{golden_max, maximize_on_simplex};
use crate::states::minimize_spectral;

/// Lower end of the `s` search range (order `10⁴`).
pub const S_LOWER: f64 = -1.0 + 1e-4;
/// Upper end of the `s` search range.
pub const S_UPPER: f64 = 40.0;

/// `E0^{(i),(t)}(s, P)` with the optimal state of the inner information
/// problem (absent at `s = 0`).
#[derive(Clone, Debug)]
pub struct E0Value {
    pub value: ExtendedValue,
    pub mean: Option<MeanResult>,
}

fn order_of(s: f64) -> Result<f64> {
    if s.is_nan() || s <= -1.0 {
        return Err(Error::InvalidParameter(format!("s = {s} outside (−1, ∞]")));
    }
    Ok(if s.is_infinite() {
        0.0
    } else {
        1.0 / (1.0 + s)
    })
}

/// `E0^{(i),(t)}(s, P) = s · I^{(i),(t)}_{1/(1+s)}(P, W)`; exactly zero at
/// `s = 0`, and `+inf` at `s = ∞` when `I_0 > 0`.
pub fn e0(
    variant: InfoVariant,
    kind: DivergenceKind,
    s: f64,
    prior: &Prior,
    channel: &CqChannel,
    opts: &OptimizerOptions,
) -> Result<ExtendedValue> {
    Ok(e0_detailed(variant, kind, s, prior, channel, opts)?.value)
}

pub fn e0_detailed(
    variant: InfoVariant,
    kind: DivergenceKind,
    s: f64,
    prior: &Prior,
    channel: &CqChannel,
    opts: &OptimizerOptions,
) -> Result<E0Value> {
    let alpha = order_of(s)?;
    if s == 0.0 {
        channel.check_prior(prior)?;
        return Ok(E0Value {
            value: ExtendedValue::Finite(0.0),
            mean: None,
        });
    }
    let r = information(variant, kind, prior, channel, alpha, opts)?;
    let value = scale_by_s(s, r.value)?;
    Ok(E0Value {
        value,
        mean: Some(r),
    })
}

fn scale_by_s(s: f64, info: ExtendedValue) -> Result<ExtendedValue> {
    match info {
        ExtendedValue::Finite(i) if s.is_infinite() => Ok(if i > 1e-12 {
            ExtendedValue::PosInfinity
        } else {
            ExtendedValue::Finite(0.0)
        }),
        ExtendedValue::Finite(i) => Ok(ExtendedValue::Finite(s * i)),
        ExtendedValue::PosInfinity if s > 0.0 => Ok(ExtendedValue::PosInfinity),
        ExtendedValue::PosInfinity => Err(Error::Numerical(
            "infinite information at negative s".into(),
        )),
    }
}

/// Gallager–Holevo form `−log Tr[(Σ P W_x^{1/(1+s)})^{1+s}]`, evaluated with
/// plain matrix powers.
pub fn gallager_holevo_e0(s: f64, prior: &Prior, channel: &CqChannel) -> Result<f64> {
    let alpha = order_of(s)?;
    if s.is_infinite() {
        return Err(Error::InvalidParameter("s must be finite".into()));
    }
    channel.check_prior(prior)?;
    let mut acc = HermitianOperator::zero(channel.output_dim());
    for (w, &p) in channel.outputs().iter().zip(prior.weights()) {
        if p > 0.0 {
            acc = &acc + &mpow(w, alpha, None)?.scale(p);
        }
    }
    Ok(-mpow(&acc, 1.0 + s, None)?.trace().ln())
}

/// Which side of the Fenchel–Legendre transform: `sup_s {E(s) − sR}`
/// (channels) or `sup_s {E(s) + sR}` (sources).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RateSign {
    Minus,
    Plus,
}

impl RateSign {
    fn apply(self, s: f64, rate: f64) -> f64 {
        match self {
            RateSign::Minus => -s * rate,
            RateSign::Plus => s * rate,
        }
    }
}

/// Where the supremum over `s` was attained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "at", content = "s", rename_all = "kebab-case")]
pub enum ArgMax {
    Interior(f64),
    LowerBoundary(f64),
    UpperBoundary(f64),
}

impl ArgMax {
    pub fn s(self) -> f64 {
        match self {
            ArgMax::Interior(s) | ArgMax::LowerBoundary(s) | ArgMax::UpperBoundary(s) => s,
        }
    }
}

impl fmt::Display for ArgMax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArgMax::Interior(s) => write!(f, "{s}"),
            ArgMax::LowerBoundary(s) => write!(f, "{s} (lower bound)"),
            ArgMax::UpperBoundary(s) => write!(f, "{s} (upper bound)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExponentWarning {
    /// Sampled second differences of the curve exceeded the concavity
    /// tolerance; the dense-grid fallback was used.
    NonConcave { max_violation: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentResult {
    pub value: ExtendedValue,
    pub argmax_s: ArgMax,
    pub unbounded: bool,
    pub warnings: Vec<ExponentWarning>,
}

/// Search settings for exponents and capacities.
#[derive(Clone, Debug)]
pub struct ExponentOptions {
    pub lower: f64,
    pub upper: f64,
    /// Golden-section tolerance in `s`.
    pub tolerance: f64,
    /// Terminal slope above which the supremum is declared unbounded.
    pub slope_tolerance: f64,
    pub concavity_tolerance: f64,
    /// Grid step of the dense fallback search.
    pub fallback_step: f64,
    /// Initial bracket step around `s = 0`.
    pub bracket_step: f64,
    /// Stationarity tolerance of the prior search.
    pub prior_tolerance: f64,
    /// Random restarts of the prior search (besides the uniform prior).
    pub restarts: usize,
    pub seed: u64,
    pub optimizer: OptimizerOptions,
}

impl Default for ExponentOptions {
    fn default() -> Self {
        Self {
            lower: S_LOWER,
            upper: S_UPPER,
            tolerance: 1e-8,
            slope_tolerance: 1e-6,
            concavity_tolerance: 1e-6,
            fallback_step: 1e-3,
            bracket_step: 0.25,
            prior_tolerance: 1e-6,
            restarts: 8,
            seed: 0,
            optimizer: OptimizerOptions::default(),
        }
    }
}

/// `sup_{s ∈ [lower, upper]} {curve(s) ∓ s·rate}` by bracket expansion from
/// `s = 0` followed by golden-section search. Sampled points are checked for
/// concavity; a violation triggers a warning and a dense-grid search.
pub fn fenchel_legendre<F>(
    mut curve: F,
    rate: f64,
    sign: RateSign,
    opts: &ExponentOptions,
) -> Result<ExponentResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (lo, hi) = (opts.lower, opts.upper);
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!(
            "empty s range [{lo}, {hi}]"
        )));
    }
    let samples: RefCell<Vec<(f64, f64)>> = RefCell::new(Vec::new());
    let mut g = |s: f64| -> Result<f64> {
        let v = curve(s)? + sign.apply(s, rate);
        samples.borrow_mut().push((s, v));
        Ok(v)
    };
    let (a, b) = bracket(&mut g, lo, hi, opts.bracket_step)?;
    let (mut s_best, mut v_best) = golden_max(&mut g, a, b, opts.tolerance)?;
    for &(s, v) in samples.borrow().iter() {
        if v > v_best {
            s_best = s;
            v_best = v;
        }
    }
    let mut warnings = Vec::new();
    let violation = concavity_violation(&samples.borrow());
    if violation > opts.concavity_tolerance {
        warnings.push(ExponentWarning::NonConcave {
            max_violation: violation,
        });
        let n = (((hi - lo) / opts.fallback_step).ceil() as usize).min(4000);
        let step = (hi - lo) / n as f64;
        for i in 0..=n {
            let s = lo + i as f64 * step;
            let v = g(s)?;
            if v > v_best {
                s_best = s;
                v_best = v;
            }
        }
        let (s2, v2) = golden_max(
            &mut g,
            (s_best - step).max(lo),
            (s_best + step).min(hi),
            opts.tolerance,
        )?;
        if v2 > v_best {
            s_best = s2;
            v_best = v2;
        }
    }
    let edge = 10.0 * opts.tolerance;
    if s_best >= hi - edge {
        let h = 1e-3;
        let slope = (g(hi)? - g(hi - h)?) / h;
        if slope > opts.slope_tolerance {
            return Ok(ExponentResult {
                value: ExtendedValue::PosInfinity,
                argmax_s: ArgMax::UpperBoundary(hi),
                unbounded: true,
                warnings,
            });
        }
        return Ok(ExponentResult {
            value: ExtendedValue::Finite(v_best),
            argmax_s: ArgMax::UpperBoundary(s_best),
            unbounded: false,
            warnings,
        });
    }
    let argmax_s = if s_best <= lo + edge {
        ArgMax::LowerBoundary(s_best)
    } else {
        ArgMax::Interior(s_best)
    };
    Ok(ExponentResult {
        value: ExtendedValue::Finite(v_best),
        argmax_s,
        unbounded: false,
        warnings,
    })
}

/// Bracket containing the maximizer of a (presumed) concave function.
fn bracket<G: FnMut(f64) -> Result<f64>>(
    g: &mut G,
    lo: f64,
    hi: f64,
    step: f64,
) -> Result<(f64, f64)> {
    let s0 = 0f64.clamp(lo, hi);
    let step = step.min((hi - lo) / 4.0);
    let f0 = g(s0)?;
    let right = (s0 + step).min(hi);
    let left = (s0 - step).max(lo);
    let fr = if right > s0 {
        g(right)?
    } else {
        f64::NEG_INFINITY
    };
    let fl = if left < s0 {
        g(left)?
    } else {
        f64::NEG_INFINITY
    };
    if f0 >= fr && f0 >= fl {
        return Ok((left, right));
    }
    let dir = if fr > fl { 1.0 } else { -1.0 };
    let limit = if dir > 0.0 { hi } else { lo };
    let (mut prev, mut cur, mut fcur) = if dir > 0.0 {
        (s0, right, fr)
    } else {
        (s0, left, fl)
    };
    let mut width = step;
    loop {
        if cur == limit {
            return Ok(ordered(prev, limit));
        }
        width *= 1.618;
        let next = if dir > 0.0 {
            (cur + width).min(hi)
        } else {
            (cur - width).max(lo)
        };
        let fnext = g(next)?;
        if fnext <= fcur {
            return Ok(ordered(prev, next));
        }
        prev = cur;
        cur = next;
        fcur = fnext;
    }
}

fn ordered(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Largest amount by which a sampled point falls below the chord of its
/// neighbours.
fn concavity_violation(samples: &[(f64, f64)]) -> f64 {
    let mut pts: Vec<(f64, f64)> = samples.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-6);
    let mut worst: f64 = 0.0;
    for w in pts.windows(3) {
        let (x1, y1) = w[0];
        let (x2, y2) = w[1];
        let (x3, y3) = w[2];
        let chord = y1 + (y3 - y1) * (x2 - x1) / (x3 - x1);
        worst = worst.max(chord - y2);
    }
    worst
}

/// Evaluates the channel auxiliary `max{E0^{(2)}, E0^{(2),*}}` along a
/// sequence of `s`, warm-starting each inner problem from the previous mean
/// of the same branch.
pub struct ChannelAuxiliary<'a> {
    prior: &'a Prior,
    channel: &'a CqChannel,
    opts: OptimizerOptions,
    variant: InfoVariant,
    warm_petz: Option<DensityOperator>,
    warm_sandwiched: Option<DensityOperator>,
}

impl<'a> ChannelAuxiliary<'a> {
    pub fn new(prior: &'a Prior, channel: &'a CqChannel, opts: &OptimizerOptions) -> Self {
        Self::with_variant(InfoVariant::Augustin, prior, channel, opts)
    }

    pub fn with_variant(
        variant: InfoVariant,
        prior: &'a Prior,
        channel: &'a CqChannel,
        opts: &OptimizerOptions,
    ) -> Self {
        Self {
            prior,
            channel,
            opts: opts.clone(),
            variant,
            warm_petz: None,
            warm_sandwiched: None,
        }
    }

    /// Branch that attains the pointwise maximum at `s`.
    pub fn dominant_kind(s: f64) -> DivergenceKind {
        if s >= 0.0 {
            DivergenceKind::Petz
        } else {
            DivergenceKind::Sandwiched
        }
    }

    pub fn eval(&mut self, s: f64) -> Result<f64> {
        let kind = Self::dominant_kind(s);
        let warm = match kind {
            DivergenceKind::Petz => &mut self.warm_petz,
            _ => &mut self.warm_sandwiched,
        };
        let mut opts = self.opts.clone();
        if let Some(w) = warm.as_ref() {
            opts.warm_starts = vec![w.clone()];
        }
        let r = e0_detailed(self.variant, kind, s, self.prior, self.channel, &opts)?;
        if let Some(m) = r.mean {
            *warm = Some(m.mean);
        }
        r.value.expect_finite("auxiliary function")
    }
}

/// `E_c(R, P) = sup_{s > −1} {max(E0^{(2)}, E0^{(2),*})(s, P) − sR}`.
pub fn channel_exponent_for_prior(
    rate: f64,
    prior: &Prior,
    channel: &CqChannel,
    opts: &ExponentOptions,
) -> Result<ExponentResult> {
    let mut aux = ChannelAuxiliary::new(prior, channel, &opts.optimizer);
    fenchel_legendre(|s| aux.eval(s), rate, RateSign::Minus, opts)
}

#[derive(Clone, Debug)]
pub struct ChannelExponent {
    pub exponent: ExponentResult,
    pub prior: Prior,
    /// Holevo capacity used to pick between the sup and the inf over priors.
    pub capacity: f64,
}

/// `E_c(R) = sup_P E_c(R, P)` for `R ≤ C_W` and `inf_P E_c(R, P)` above the
/// Holevo capacity.
pub fn channel_exponent(
    rate: f64,
    channel: &CqChannel,
    opts: &ExponentOptions,
) -> Result<ChannelExponent> {
    let cap = capacity(InfoVariant::Renyi, DivergenceKind::Petz, channel, 1.0, opts)?;
    let c = cap.value.expect_finite("capacity")?;
    let maximize = rate <= c;
    let k = channel.input_size();
    let mut best: Option<(Vec<f64>, ExponentResult)> = None;
    let mut f = |p: &[f64]| -> Result<f64> {
        let prior = Prior::normalized(p.to_vec())?;
        let r = channel_exponent_for_prior(rate, &prior, channel, opts)?;
        let v = r.value.to_f64();
        let better = match &best {
            None => true,
            Some((_, b)) => {
                let bv = b.value.to_f64();
                if maximize {
                    v > bv
                } else {
                    v < bv
                }
            }
        };
        if better {
            best = Some((p.to_vec(), r));
        }
        Ok(if maximize { v } else { -v })
    };
    maximize_on_simplex(&mut f, k, opts.restarts, opts.seed, opts.prior_tolerance)?;
    let (p, exponent) = best.ok_or_else(|| Error::Numerical("empty prior search".into()))?;
    Ok(ChannelExponent {
        exponent,
        prior: Prior::normalized(p)?,
        capacity: c,
    })
}

#[derive(Clone, Debug)]
pub struct CapacityResult {
    pub value: ExtendedValue,
    /// Maximizing prior.
    pub prior: Prior,
    pub iterations: usize,
}

/// `sup_P I^{(i),(t)}_α(P, W)`. At `α = 1` every variant equals the Holevo
/// capacity.
pub fn capacity(
    variant: InfoVariant,
    kind: DivergenceKind,
    channel: &CqChannel,
    alpha: f64,
    opts: &ExponentOptions,
) -> Result<CapacityResult> {
    let k = channel.input_size();
    // Nearby priors have nearby means: each inner minimization starts from
    // the previous optimum.
    let mut last: Option<DensityOperator> = None;
    let mut f = |p: &[f64]| -> Result<f64> {
        let prior = Prior::normalized(p.to_vec())?;
        if alpha == 1.0 {
            holevo_information(&prior, channel)
        } else {
            let mut o = opts.optimizer.clone();
            if let Some(w) = &last {
                o.warm_starts = vec![w.clone()];
            }
            let r = information(variant, kind, &prior, channel, alpha, &o)?;
            last = Some(r.mean);
            Ok(r.value.to_f64())
        }
    };
    let r = maximize_on_simplex(&mut f, k, opts.restarts, opts.seed, opts.prior_tolerance)?;
    Ok(CapacityResult {
        value: ExtendedValue::from_f64(r.value),
        prior: Prior::normalized(r.point)?,
        iterations: r.iterations,
    })
}

/// Conditional Rényi entropy `H_α(X|B) = −inf_σ D_α(ρ_XB ‖ 𝟙⊗σ)`.
pub fn conditional_renyi_entropy(
    kind: DivergenceKind,
    source: &CqSource,
    alpha: f64,
    opts: &OptimizerOptions,
) -> Result<f64> {
    let alpha = crate::divergence::Order::new(alpha)?.value();
    let prep = Prepared::new(&source.prior, &source.side_info)?;
    if alpha == 1.0 {
        let i = holevo_information(&source.prior, &source.side_info)?;
        return Ok(source.prior.entropy() - i);
    }
    if kind == DivergenceKind::Petz && alpha.is_finite() {
        // Σ P^α ρ_x^α through the Rényi closed form with weights P^α.
        let mut scaled = prep.clone();
        for w in scaled.weights.iter_mut() {
            *w = w.powf(alpha);
        }
        return Ok(-petz_renyi_prepared(&scaled, alpha)?
            .value
            .expect_finite("conditional entropy")?);
    }
    if near_one(alpha) {
        let lo = conditional_renyi_entropy(kind, source, 1.0 - NEAR_ONE, opts)?;
        let hi = conditional_renyi_entropy(kind, source, 1.0 + NEAR_ONE, opts)?;
        let mid = conditional_renyi_entropy(kind, source, 1.0, opts)?;
        return Ok(quadratic_near_one(alpha, lo, mid, hi));
    }
    let m = minimize_spectral(
        |s| {
            Ok(
                renyi_block(kind, &prep, s, alpha, BlockWeights::Conditional)?
                    .value
                    .to_f64(),
            )
        },
        prep.dim,
        &[prep.average()],
        opts,
    )?;
    Ok(-m.value)
}

/// `E_{0,s}(s) = −s · H_{1/(1+s)}(X|B)` for the i.i.d. source.
pub fn e0_source_iid(
    kind: DivergenceKind,
    s: f64,
    source: &CqSource,
    opts: &OptimizerOptions,
) -> Result<f64> {
    let alpha = order_of(s)?;
    if s == 0.0 {
        return Ok(0.0);
    }
    if s.is_infinite() {
        return Err(Error::InvalidParameter("s must be finite".into()));
    }
    Ok(-s * conditional_renyi_entropy(kind, source, alpha, opts)?)
}

/// Type-dependent source auxiliary `E0^{(2)}(s, P_X) − s · H(P_X)` with the
/// side-information channel `x ↦ ρ_x`.
pub fn e0_source_type(
    kind: DivergenceKind,
    s: f64,
    source: &CqSource,
    opts: &OptimizerOptions,
) -> Result<f64> {
    if s.is_infinite() {
        return Err(Error::InvalidParameter("s must be finite".into()));
    }
    let e = e0(
        InfoVariant::Augustin,
        kind,
        s,
        &source.prior,
        &source.side_info,
        opts,
    )?
    .expect_finite("auxiliary function")?;
    Ok(e - s * source.prior.entropy())
}

/// Source exponent `sup_s {max(E^{Petz}, E^*)(s) + sR}`: the i.i.d. form, or
/// the type-dependent form when `fixed_type` is given.
pub fn source_exponent(
    rate: f64,
    source: &CqSource,
    fixed_type: Option<&Prior>,
    opts: &ExponentOptions,
) -> Result<ExponentResult> {
    let typed;
    let src = match fixed_type {
        Some(q) => {
            typed = CqSource::new(q.clone(), source.side_info.clone())?;
            &typed
        }
        None => source,
    };
    let mut warm_petz: Option<DensityOperator> = None;
    let mut warm_sw: Option<DensityOperator> = None;
    let curve = |s: f64| -> Result<f64> {
        let kind = ChannelAuxiliary::dominant_kind(s);
        match fixed_type {
            None => e0_source_iid(kind, s, src, &opts.optimizer),
            Some(_) => {
                let warm = if kind == DivergenceKind::Petz {
                    &mut warm_petz
                } else {
                    &mut warm_sw
                };
                let mut o = opts.optimizer.clone();
                if let Some(w) = warm.as_ref() {
                    o.warm_starts = vec![w.clone()];
                }
                let r = e0_detailed(
                    InfoVariant::Augustin,
                    kind,
                    s,
                    &src.prior,
                    &src.side_info,
                    &o,
                )?;
                if let Some(m) = r.mean {
                    *warm = Some(m.mean);
                }
                Ok(r.value.expect_finite("auxiliary function")? - s * src.prior.entropy())
            }
        }
    };
    fenchel_legendre(curve, rate, RateSign::Plus, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcalc::{random_density, random_prior};

    fn channel(seed: u64, k: usize, d: usize) -> CqChannel {
        let outs = (0..k)
            .map(|x| random_density(d, d, seed * 100 + x as u64).unwrap())
            .collect();
        CqChannel::new(outs).unwrap()
    }

    #[test]
    fn e0_vanishes_at_zero() {
        let ch = channel(1, 2, 2);
        let p = Prior::uniform(2);
        for kind in DivergenceKind::ALL {
            for v in InfoVariant::ALL {
                let e = e0(v, kind, 0.0, &p, &ch, &OptimizerOptions::default()).unwrap();
                assert_eq!(e, ExtendedValue::Finite(0.0));
            }
        }
    }

    #[test]
    fn gallager_form_matches_renyi_route() {
        let ch = channel(2, 3, 2);
        let p = random_prior(3, 1).unwrap();
        for &s in &[-0.5, 0.3, 2.0] {
            let a = gallager_holevo_e0(s, &p, &ch).unwrap();
            let b = e0(
                InfoVariant::Renyi,
                DivergenceKind::Petz,
                s,
                &p,
                &ch,
                &OptimizerOptions::default(),
            )
            .unwrap()
            .to_f64();
            assert!((a - b).abs() < 1e-12, "{s}: {a} vs {b}");
        }
    }

    #[test]
    fn legendre_of_negative_parabola() {
        // sup_s {−s² − sR} = R²/4 at s = −R/2.
        let opts = ExponentOptions {
            lower: -10.0,
            upper: 10.0,
            ..Default::default()
        };
        for &r in &[0.5, 1.0, 3.0] {
            let res = fenchel_legendre(|s| Ok(-s * s), r, RateSign::Minus, &opts).unwrap();
            assert!((res.value.to_f64() - r * r / 4.0).abs() < 1e-12);
            assert!((res.argmax_s.s() + r / 2.0).abs() < 1e-7);
            assert!(res.warnings.is_empty());
        }
    }

    #[test]
    fn linear_growth_is_unbounded() {
        let opts = ExponentOptions::default();
        let res = fenchel_legendre(|s| Ok(0.5 * s), 0.1, RateSign::Minus, &opts).unwrap();
        assert!(res.unbounded);
        assert_eq!(res.value, ExtendedValue::PosInfinity);
    }

    #[test]
    fn boundary_maximum_is_reported() {
        let opts = ExponentOptions::default();
        let res = fenchel_legendre(|s| Ok(-s), 0.5, RateSign::Minus, &opts).unwrap();
        assert!(matches!(res.argmax_s, ArgMax::LowerBoundary(_)));
        assert!((res.value.to_f64() - 1.5 * (1.0 - 1e-4)).abs() < 1e-9);
    }

    #[test]
    fn non_concave_curve_warns() {
        let opts = ExponentOptions {
            lower: -1.0,
            upper: 3.0,
            ..Default::default()
        };
        // Two bumps; the taller one sits away from the origin.
        let f = |s: f64| {
            Ok((-(s - 0.2).powi(2) * 20.0).exp() + 2.0 * (-(s - 2.5).powi(2) * 20.0).exp())
        };
        let res = fenchel_legendre(f, 0.0, RateSign::Minus, &opts).unwrap();
        assert!(!res.warnings.is_empty());
        assert!((res.argmax_s.s() - 2.5).abs() < 1e-3);
    }

    #[test]
    fn exponent_zero_at_holevo_rate() {
        let ch = channel(3, 2, 2);
        let p = random_prior(2, 2).unwrap();
        let i = holevo_information(&p, &ch).unwrap();
        let r = channel_exponent_for_prior(i, &p, &ch, &ExponentOptions::default()).unwrap();
        assert!(r.value.to_f64().abs() < 1e-9, "{:?}", r);
        let below =
            channel_exponent_for_prior(0.5 * i, &p, &ch, &ExponentOptions::default()).unwrap();
        assert!(below.value.to_f64() > 0.0);
        assert!(below.argmax_s.s() > 0.0);
        let above =
            channel_exponent_for_prior(1.5 * i, &p, &ch, &ExponentOptions::default()).unwrap();
        assert!(above.value.to_f64() > 0.0);
        assert!(above.argmax_s.s() < 0.0);
    }

    #[test]
    fn holevo_capacity_of_classical_binary_symmetric_channel() {
        let eps: f64 = 0.1;
        let w0 = DensityOperator::diagonal(&[1.0 - eps, eps]).unwrap();
        let w1 = DensityOperator::diagonal(&[eps, 1.0 - eps]).unwrap();
        let ch = CqChannel::new(vec![w0, w1]).unwrap();
        let c = capacity(
            InfoVariant::Renyi,
            DivergenceKind::Petz,
            &ch,
            1.0,
            &ExponentOptions::default(),
        )
        .unwrap();
        let h = -(eps * eps.ln() + (1.0 - eps) * (1.0 - eps).ln());
        assert!((c.value.to_f64() - (2f64.ln() - h)).abs() < 1e-10);
        assert!((c.prior.weights()[0] - 0.5).abs() < 1e-4);
    }

    #[test]
    fn conditional_entropy_trivial_side_information() {
        // Identical side-information states: H_α(X|B) is the Rényi entropy of P.
        let rho = random_density(2, 2, 9).unwrap();
        let ch = CqChannel::new(vec![rho.clone(), rho]).unwrap();
        let p = Prior::new(vec![0.3, 0.7]).unwrap();
        let src = CqSource::new(p.clone(), ch).unwrap();
        let opts = OptimizerOptions::default();
        for kind in DivergenceKind::ALL {
            for &a in &[0.5, 1.0, 2.0] {
                let h = conditional_renyi_entropy(kind, &src, a, &opts).unwrap();
                assert!((h - p.renyi_entropy(a)).abs() < 1e-9, "{kind} {a}: {h}");
            }
        }
    }
}
