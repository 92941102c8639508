//! Rényi (Sibson-type) and Augustin information of a classical-quantum
//! channel under a prior, with their optimal output states.
//!
//! * Rényi: `I_α(P,W) = inf_σ D_α(P∘W ‖ P⊗σ)`.
//! * Augustin: `I_α(P,W) = inf_σ Σ_x P(x) D_α(W_x‖σ)`.
//!
//! Petz–Rényi information has a closed form; Petz–Augustin information is
//! found by a fixed-point iteration. The sandwiched and log-Euclidean
//! variants, and all order endpoints without a closed form, go through the
//! state-space minimizer.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::{classical_product, joint_state, CqChannel, Prepared, Prior};
use crate::divergence::{
    augustin_block, divergence, renyi_block, umegaki_spec, BlockWeights, DivergenceKind,
    ExtendedValue, Order,
};
use crate::error::{Error, Result};
use crate::matcalc::{
    assemble, eig_matrix, trace_distance, CMatrix, DensityOperator, HermitianOperator, Spectrum,
};
use crate::states::minimize_spectral;
pub use crate::states::OptimizerOptions;

/// Which information measure: `1` Rényi, `2` Augustin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InfoVariant {
    Renyi,
    Augustin,
}

impl InfoVariant {
    pub const ALL: [InfoVariant; 2] = [InfoVariant::Renyi, InfoVariant::Augustin];

    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(InfoVariant::Renyi),
            2 => Ok(InfoVariant::Augustin),
            _ => Err(Error::InvalidParameter(format!("information index {i}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            InfoVariant::Renyi => 1,
            InfoVariant::Augustin => 2,
        }
    }
}

impl fmt::Display for InfoVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InfoVariant::Renyi => "renyi",
            InfoVariant::Augustin => "augustin",
        })
    }
}

impl FromStr for InfoVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "renyi" | "sibson" => Ok(InfoVariant::Renyi),
            "2" | "augustin" => Ok(InfoVariant::Augustin),
            _ => Err(Error::Parse(format!("unknown information variant '{s}'"))),
        }
    }
}

/// Optimal value and state of an information minimization.
#[derive(Clone, Debug)]
pub struct MeanResult {
    pub mean: DensityOperator,
    pub value: ExtendedValue,
    pub iterations: usize,
    /// Last step size (minimizer) or fixed-point residual `½‖T(σ) − σ‖₁`.
    pub residual: f64,
    /// The value is an extrapolated order limit.
    pub limit_estimate: bool,
}

/// Minimizes a user objective over density operators of dimension `dim`.
/// Objective errors are treated as `+inf` unless every point fails.
pub fn minimize_over_states<F>(
    mut objective: F,
    dim: usize,
    opts: &OptimizerOptions,
) -> Result<MeanResult>
where
    F: FnMut(&DensityOperator) -> Result<ExtendedValue>,
{
    let f = |s: &Spectrum| -> Result<f64> {
        let state = DensityOperator::trusted(HermitianOperator::symmetrized(s.matrix()));
        Ok(objective(&state)?.to_f64())
    };
    let m = minimize_spectral(f, dim, &[], opts)?;
    Ok(MeanResult {
        mean: m.state,
        value: ExtendedValue::from_f64(m.value),
        iterations: m.iterations,
        residual: m.residual,
        limit_estimate: false,
    })
}

/// Holevo information `I(P,W) = Σ P(x) D(W_x ‖ PW)`.
pub fn holevo_information(prior: &Prior, channel: &CqChannel) -> Result<f64> {
    let prep = Prepared::new(prior, channel)?;
    holevo_prepared(&prep)
}

fn holevo_prepared(prep: &Prepared) -> Result<f64> {
    let avg = Spectrum::of(&prep.average(), None)?;
    let mut acc = 0.0;
    for (r, &p) in prep.spectra.iter().zip(&prep.weights) {
        acc += p * umegaki_spec(r, &avg, &r.overlap(&avg)).expect_finite("Holevo term")?;
    }
    Ok(acc)
}

fn order_one(prep: &Prepared) -> Result<MeanResult> {
    Ok(MeanResult {
        mean: prep.average(),
        value: ExtendedValue::Finite(holevo_prepared(prep)?),
        iterations: 0,
        residual: 0.0,
        limit_estimate: false,
    })
}

/// Interpolation nodes sit at `1 ± NEAR_ONE`. Minimization-based values with
/// `|α − 1| < NEAR_ONE / 2` are interpolated: there `log Q/(α−1)` loses
/// accuracy to cancellation and the minimizer cannot resolve its gradient.
pub(crate) const NEAR_ONE: f64 = 1e-4;

pub(crate) fn near_one(alpha: f64) -> bool {
    alpha != 1.0 && (alpha - 1.0).abs() < 0.5 * NEAR_ONE
}

/// Quadratic interpolation through `1 − NEAR_ONE`, `1` and `1 + NEAR_ONE`.
pub(crate) fn quadratic_near_one(alpha: f64, lo: f64, mid: f64, hi: f64) -> f64 {
    let t = (alpha - 1.0) / NEAR_ONE;
    mid + 0.5 * t * (hi - lo) + 0.5 * t * t * (hi + lo - 2.0 * mid)
}

fn interpolate_near_one<F>(alpha: f64, prep: &Prepared, mut f: F) -> Result<MeanResult>
where
    F: FnMut(f64) -> Result<MeanResult>,
{
    let lo = f(1.0 - NEAR_ONE)?;
    let hi = f(1.0 + NEAR_ONE)?;
    let mid = holevo_prepared(prep)?;
    let value = quadratic_near_one(
        alpha,
        lo.value.expect_finite("information")?,
        mid,
        hi.value.expect_finite("information")?,
    );
    let iterations = lo.iterations + hi.iterations;
    let residual = lo.residual.max(hi.residual);
    let nearer = if alpha > 1.0 { hi } else { lo };
    Ok(MeanResult {
        mean: nearer.mean,
        value: ExtendedValue::Finite(value),
        iterations,
        residual,
        limit_estimate: false,
    })
}

/// `I^{(i),(t)}_α(P, W)` with its optimal state.
pub fn information(
    variant: InfoVariant,
    kind: DivergenceKind,
    prior: &Prior,
    channel: &CqChannel,
    alpha: f64,
    opts: &OptimizerOptions,
) -> Result<MeanResult> {
    match variant {
        InfoVariant::Renyi => renyi_information(kind, prior, channel, alpha, opts),
        InfoVariant::Augustin => augustin_information(kind, prior, channel, alpha, opts),
    }
}

/// Rényi information `inf_σ D_α(P∘W ‖ P⊗σ)`.
pub fn renyi_information(
    kind: DivergenceKind,
    prior: &Prior,
    channel: &CqChannel,
    alpha: f64,
    opts: &OptimizerOptions,
) -> Result<MeanResult> {
    let alpha = Order::new(alpha)?.value();
    let prep = Prepared::new(prior, channel)?;
    if alpha == 1.0 {
        return order_one(&prep);
    }
    if kind == DivergenceKind::Petz && alpha.is_finite() {
        return petz_renyi_prepared(&prep, alpha);
    }
    if near_one(alpha) {
        return interpolate_near_one(alpha, &prep, |a| {
            renyi_information(kind, prior, channel, a, opts)
        });
    }
    let mut starts = vec![prep.average()];
    if alpha > 0.0 && alpha.is_finite() {
        starts.push(petz_renyi_prepared(&prep, alpha)?.mean);
    }
    minimize_block(&prep, &starts, opts, |s| {
        renyi_block(kind, &prep, s, alpha, BlockWeights::Product)
    })
}

/// Augustin information `inf_σ Σ_x P(x) D_α(W_x‖σ)`.
pub fn augustin_information(
    kind: DivergenceKind,
    prior: &Prior,
    channel: &CqChannel,
    alpha: f64,
    opts: &OptimizerOptions,
) -> Result<MeanResult> {
    let alpha = Order::new(alpha)?.value();
    let prep = Prepared::new(prior, channel)?;
    if alpha == 1.0 {
        return order_one(&prep);
    }
    if kind == DivergenceKind::Petz && alpha > 0.0 && alpha.is_finite() {
        // On failure fall back to direct minimization.
        if let Ok(r) = petz_augustin_prepared(&prep, alpha, opts) {
            return Ok(r);
        }
    }
    if near_one(alpha) {
        return interpolate_near_one(alpha, &prep, |a| {
            augustin_information(kind, prior, channel, a, opts)
        });
    }
    let mut starts = vec![prep.average()];
    if alpha > 0.0 && alpha.is_finite() {
        starts.push(petz_renyi_prepared(&prep, alpha)?.mean);
    }
    minimize_block(&prep, &starts, opts, |s| {
        augustin_block(kind, &prep, s, alpha)
    })
}

fn minimize_block<F>(
    prep: &Prepared,
    starts: &[DensityOperator],
    opts: &OptimizerOptions,
    mut f: F,
) -> Result<MeanResult>
where
    F: FnMut(&Spectrum) -> Result<crate::divergence::DivergenceValue>,
{
    let mut limit = false;
    let m = minimize_spectral(
        |s| {
            let v = f(s)?;
            limit = v.limit_estimate;
            Ok(v.value.to_f64())
        },
        prep.dim,
        starts,
        opts,
    )?;
    Ok(MeanResult {
        mean: m.state,
        value: ExtendedValue::from_f64(m.value),
        iterations: m.iterations,
        residual: m.residual,
        limit_estimate: limit,
    })
}

/// Petz–Rényi mean `(Σ P W_x^α)^{1/α} / Tr` and information
/// `α/(α−1) · log Tr[(Σ P W_x^α)^{1/α}]`. At `α = 0` the value is
/// `−log λ_max(Σ P Π_x)` with the top eigenvector as mean.
pub fn petz_renyi_closed_form(
    prior: &Prior,
    channel: &CqChannel,
    alpha: f64,
) -> Result<MeanResult> {
    let alpha = Order::new(alpha)?.value();
    if alpha.is_infinite() {
        return Err(Error::InvalidOrder(alpha));
    }
    let prep = Prepared::new(prior, channel)?;
    if alpha == 1.0 {
        return order_one(&prep);
    }
    petz_renyi_prepared(&prep, alpha)
}

pub(crate) fn petz_renyi_prepared(prep: &Prepared, alpha: f64) -> Result<MeanResult> {
    let d = prep.dim;
    if alpha == 0.0 {
        let mut m = CMatrix::zeros(d, d);
        for (r, &p) in prep.spectra.iter().zip(&prep.weights) {
            m += r.projector() * num_complex::Complex64::new(p, 0.0);
        }
        let sd = eig_matrix(&((&m + m.adjoint()) * num_complex::Complex64::new(0.5, 0.0)));
        let top = sd.max_eigenvalue();
        let v: Vec<num_complex::Complex64> =
            sd.eigenvectors.column(d - 1).iter().cloned().collect();
        return Ok(MeanResult {
            mean: DensityOperator::pure(&v)?,
            value: ExtendedValue::Finite(-top.ln()),
            iterations: 0,
            residual: 0.0,
            limit_estimate: false,
        });
    }
    // Scale by the largest output eigenvalue to keep W^α representable.
    let lmax = prep
        .spectra
        .iter()
        .map(|r| r.logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
        .fold(f64::NEG_INFINITY, f64::max);
    let mut a = CMatrix::zeros(d, d);
    for (r, &p) in prep.spectra.iter().zip(&prep.weights) {
        let vals: Vec<f64> = r
            .logs
            .iter()
            .map(|&l| {
                if l > f64::NEG_INFINITY {
                    (alpha * (l - lmax)).exp()
                } else {
                    0.0
                }
            })
            .collect();
        a += assemble(&r.vectors, &vals) * num_complex::Complex64::new(p, 0.0);
    }
    let a = HermitianOperator::symmetrized(a);
    let root = Spectrum::of(&a, None)?.power_matrix(1.0 / alpha);
    let root = HermitianOperator::symmetrized(root);
    let tr = root.trace();
    if !(tr > 0.0) {
        return Err(Error::ZeroOperator);
    }
    let log_tr = tr.ln() + lmax;
    Ok(MeanResult {
        mean: DensityOperator::trusted(root),
        value: ExtendedValue::Finite(alpha / (alpha - 1.0) * log_tr),
        iterations: 0,
        residual: 0.0,
        limit_estimate: false,
    })
}

/// Petz–Augustin mean as the fixed point of
/// `T(σ) = Σ P σ^{(1−α)/2} W_x^α σ^{(1−α)/2} / Tr[W_x^α σ^{1−α}]`, started
/// at `PW` (or the first warm start). The iteration runs on the equivalent
/// condition `σ^α ∝ Σ P W_x^α / Tr[W_x^α σ^{1−α}]` and stops once both the
/// step between successive iterates and the residual `½‖T(σ) − σ‖₁` are
/// within the tolerance. The damping escalates
/// `0 → 0.5 → 0.9` when the step stops shrinking over a window of 20
/// iterations.
pub fn petz_augustin_fixed_point(
    prior: &Prior,
    channel: &CqChannel,
    alpha: f64,
    opts: &OptimizerOptions,
) -> Result<MeanResult> {
    let alpha = Order::new(alpha)?.value();
    if alpha == 0.0 || alpha.is_infinite() {
        return Err(Error::InvalidOrder(alpha));
    }
    let prep = Prepared::new(prior, channel)?;
    if alpha == 1.0 {
        return order_one(&prep);
    }
    petz_augustin_prepared(&prep, alpha, opts)
}

/// `T(σ) = Σ P σ^{(1−α)/2} W_x^α σ^{(1−α)/2} / Tr[W_x^α σ^{1−α}]`.
fn augustin_map(
    prep: &Prepared,
    powered: &[CMatrix],
    sigma: &Spectrum,
    alpha: f64,
) -> Result<HermitianOperator> {
    let weight = sigma.power_matrix(1.0 - alpha);
    let half = sigma.power_matrix((1.0 - alpha) / 2.0);
    let mut acc = CMatrix::zeros(prep.dim, prep.dim);
    for (wa, &p) in powered.iter().zip(&prep.weights) {
        let t = (wa * &weight).trace().re;
        if !(t > 0.0) {
            return Err(Error::ZeroOperator);
        }
        acc += &half * wa * &half * num_complex::Complex64::new(p / t, 0.0);
    }
    Ok(HermitianOperator::symmetrized(acc))
}

/// The stationarity condition `σ = T(σ)` restated as
/// `σ^α = Σ P W_x^α / Tr[W_x^α σ^{1−α}]`, iterated as
/// `σ ← (Σ P W_x^α / Tr[W_x^α σ^{1−α}])^{1/α} / Tr`.
fn power_map(
    prep: &Prepared,
    powered: &[CMatrix],
    sigma: &Spectrum,
    alpha: f64,
) -> Result<HermitianOperator> {
    let weight = sigma.power_matrix(1.0 - alpha);
    let mut acc = CMatrix::zeros(prep.dim, prep.dim);
    for (wa, &p) in powered.iter().zip(&prep.weights) {
        let t = (wa * &weight).trace().re;
        if !(t > 0.0) {
            return Err(Error::ZeroOperator);
        }
        acc += wa * num_complex::Complex64::new(p / t, 0.0);
    }
    let acc = HermitianOperator::symmetrized(acc);
    let root = HermitianOperator::symmetrized(Spectrum::of(&acc, None)?.power_matrix(1.0 / alpha));
    let tr = root.trace();
    if !(tr > 0.0) {
        return Err(Error::ZeroOperator);
    }
    Ok(root.scale(1.0 / tr))
}

fn petz_augustin_prepared(
    prep: &Prepared,
    alpha: f64,
    opts: &OptimizerOptions,
) -> Result<MeanResult> {
    let powered: Vec<CMatrix> = prep.spectra.iter().map(|r| r.power_matrix(alpha)).collect();
    let start = opts
        .warm_starts
        .first()
        .cloned()
        .unwrap_or_else(|| prep.average());
    let mut schedule = vec![opts.damping];
    for d in [0.5, 0.9] {
        if d > opts.damping {
            schedule.push(d);
        }
    }
    let support_rank = Spectrum::of(&prep.average(), None)?.rank();
    let window = 20;
    let mut total = 0;
    let mut best_residual = f64::INFINITY;
    let mut sigma = start;
    'schedule: for &damping in &schedule {
        let mut history: Vec<f64> = Vec::new();
        let mut s = sigma.clone();
        while total < opts.max_iterations {
            total += 1;
            let spec = Spectrum::of(&s, None)?;
            let next = power_map(prep, &powered, &spec, alpha)?;
            let step = trace_distance(&next, &s);
            if step <= opts.tolerance {
                if alpha > 1.0 && spec.rank() < support_rank {
                    // Collapsed onto a smaller support than PW.
                    break 'schedule;
                }
                let residual = trace_distance(&augustin_map(prep, &powered, &spec, alpha)?, &s);
                if residual <= opts.tolerance {
                    let value = augustin_value(prep, &spec, alpha)?;
                    return Ok(MeanResult {
                        mean: s,
                        value,
                        iterations: total,
                        residual,
                        limit_estimate: false,
                    });
                }
            }
            if step < best_residual {
                best_residual = step;
                sigma = s.clone();
            }
            history.push(step);
            let k = history.len();
            if k > window && history[k - 1] >= history[k - 1 - window] {
                continue 'schedule;
            }
            let mixed = &next.scale(1.0 - damping) + &s.scale(damping);
            s = DensityOperator::trusted(mixed);
        }
        break;
    }
    Err(Error::NonConvergence {
        iterations: total,
        residual: best_residual,
    })
}

fn augustin_value(prep: &Prepared, sigma: &Spectrum, alpha: f64) -> Result<ExtendedValue> {
    Ok(augustin_block(DivergenceKind::Petz, prep, sigma, alpha)?.value)
}

/// `|D_α(P∘W ‖ P⊗τ) − I_α(P,W) − D_α(σ_α ‖ τ)|` for the Petz divergence and
/// the closed-form Rényi mean `σ_α`. The joint divergence is evaluated on the
/// full block matrices.
pub fn sibson_decomposition_residual(
    prior: &Prior,
    channel: &CqChannel,
    alpha: f64,
    tau: &DensityOperator,
) -> Result<f64> {
    let closed = petz_renyi_closed_form(prior, channel, alpha)?;
    let joint = joint_state(prior, channel)?;
    let product = classical_product(prior.weights(), tau);
    let lhs = divergence(DivergenceKind::Petz, &joint, &product, alpha)?
        .expect_finite("joint divergence")?;
    let info = closed.value.expect_finite("information")?;
    let dm = divergence(DivergenceKind::Petz, &closed.mean, tau, alpha)?
        .expect_finite("mean divergence")?;
    Ok((lhs - info - dm).abs())
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
    fn holevo_of_orthogonal_pure_states_is_entropy() {
        let w0 = DensityOperator::diagonal(&[1.0, 0.0]).unwrap();
        let w1 = DensityOperator::diagonal(&[0.0, 1.0]).unwrap();
        let ch = CqChannel::new(vec![w0, w1]).unwrap();
        let p = Prior::new(vec![0.3, 0.7]).unwrap();
        let i = holevo_information(&p, &ch).unwrap();
        assert!((i - p.entropy()).abs() < 1e-14);
    }

    #[test]
    fn petz_closed_form_matches_minimization() {
        let ch = channel(1, 3, 2);
        let p = random_prior(3, 2).unwrap();
        let opts = OptimizerOptions::default();
        for &a in &[0.4, 1.8] {
            let closed = petz_renyi_closed_form(&p, &ch, a).unwrap();
            let prep = Prepared::new(&p, &ch).unwrap();
            let num = minimize_block(&prep, &[], &opts, |s| {
                renyi_block(DivergenceKind::Petz, &prep, s, a, BlockWeights::Product)
            })
            .unwrap();
            let (x, y) = (closed.value.to_f64(), num.value.to_f64());
            assert!((x - y).abs() < 1e-10, "{a}: {x} vs {y}");
            assert!(trace_distance(&closed.mean, &num.mean) < 1e-5);
        }
    }

    #[test]
    fn fixed_point_is_stationary_and_minimal() {
        let ch = channel(2, 3, 3);
        let p = random_prior(3, 3).unwrap();
        let opts = OptimizerOptions::default();
        for &a in &[0.3, 0.8, 1.5, 3.0] {
            let fp = petz_augustin_fixed_point(&p, &ch, a, &opts).unwrap();
            assert!(fp.residual <= 1e-9);
            let prep = Prepared::new(&p, &ch).unwrap();
            let num = minimize_block(&prep, &[], &opts, |s| {
                augustin_block(DivergenceKind::Petz, &prep, s, a)
            })
            .unwrap();
            assert!(
                (fp.value.to_f64() - num.value.to_f64()).abs() < 1e-9,
                "{a}: {} vs {}",
                fp.value,
                num.value
            );
        }
    }

    #[test]
    fn sibson_identity_holds() {
        let ch = channel(3, 2, 2);
        let p = random_prior(2, 5).unwrap();
        let tau = random_density(2, 2, 77).unwrap();
        for &a in &[0.5, 2.0] {
            let r = sibson_decomposition_residual(&p, &ch, a, &tau).unwrap();
            assert!(r < 1e-10, "{r}");
        }
    }

    #[test]
    fn order_one_is_holevo_for_every_kind() {
        let ch = channel(4, 2, 2);
        let p = random_prior(2, 6).unwrap();
        let h = holevo_information(&p, &ch).unwrap();
        let opts = OptimizerOptions::default();
        for kind in DivergenceKind::ALL {
            for v in InfoVariant::ALL {
                let r = information(v, kind, &p, &ch, 1.0, &opts).unwrap();
                assert!((r.value.to_f64() - h).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn sandwiched_below_petz() {
        let ch = channel(5, 3, 2);
        let p = random_prior(3, 7).unwrap();
        let opts = OptimizerOptions::default();
        for v in InfoVariant::ALL {
            for &a in &[0.6, 2.0] {
                let pz = information(v, DivergenceKind::Petz, &p, &ch, a, &opts).unwrap();
                let sw = information(v, DivergenceKind::Sandwiched, &p, &ch, a, &opts).unwrap();
                assert!(sw.value.to_f64() <= pz.value.to_f64() + 1e-10);
            }
        }
    }

    #[test]
    fn petz_zero_order() {
        // Commuting outputs with a shared kernel direction.
        let w0 = DensityOperator::diagonal(&[0.5, 0.5, 0.0]).unwrap();
        let w1 = DensityOperator::diagonal(&[0.0, 0.5, 0.5]).unwrap();
        let ch = CqChannel::new(vec![w0, w1]).unwrap();
        let p = Prior::uniform(2);
        let r = petz_renyi_closed_form(&p, &ch, 0.0).unwrap();
        // Σ P Π_x = diag(1/2, 1, 1/2)
        assert!(r.value.to_f64().abs() < 1e-14);
    }
}
