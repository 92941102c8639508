//! Duality relations between exponents.
//!
//! Entropic duality for sources: the i.i.d. source exponent equals
//! `min_Q {E_s(R, Q) + D(Q‖P)}` over types `Q` of the binary alphabet, where
//! `E_s(R, Q)` is the type-dependent exponent.
//!
//! Fenchel duality between a channel and a source:
//! `min_R {E_s(R, Q) + E_c(R, P)} = max_{s∈(−1,0)} {E_{0,s}(s, Q) + E0^{(2),*}(s, P)}`,
//! checked where the source's conditional entropy exceeds the channel's
//! mutual information, so that the minimizing rate is interior.

use qexp_core::exponents::S_LOWER;
use qexp_core::{
    channel_exponent_for_prior, e0, e0_source_type, holevo_information, source_exponent,
    CqChannel, CqSource, DivergenceKind, ExponentOptions, InfoVariant, OptimizerOptions, Prior,
    Result,
};
use rand::Rng;

use crate::instances::{channel, instance_seed, noisy_channel, prior, rng};
use crate::report::{CheckReport, Tally};
use crate::search::{golden_max, grid_golden_min};
use crate::SuiteConfig;

pub const ENTROPIC: &str = "entropic-duality";
pub const FENCHEL: &str = "fenchel-duality";
pub const TOLERANCE: f64 = 2e-3;
const DEFAULT_TRIALS: usize = 10;
/// Grid over the type weight before golden-section refinement (step 0.025).
const TYPE_GRID: usize = 40;
const RATE_GRID: usize = 20;
/// Required margin `H(X|B)_Q − I(P, W)` of Fenchel instances.
const FENCHEL_MARGIN: f64 = 0.05;
const MAX_RESAMPLES: usize = 50;

/// Conditional entropy `H(X|B) = H(P) − I(P, ρ)`.
fn conditional_entropy(src: &CqSource) -> Result<f64> {
    Ok(src.prior.entropy() - holevo_information(&src.prior, &src.side_info)?)
}

pub fn run_entropic(cfg: &SuiteConfig) -> CheckReport {
    let trials = cfg.trials_or(DEFAULT_TRIALS);
    let d = cfg.dim.unwrap_or(2);
    let mut t = Tally::new(ENTROPIC, TOLERANCE);
    for i in 0..trials {
        let seed = instance_seed(cfg.seed, ENTROPIC, i);
        let res = (|| -> Result<()> {
            let mut r = rng(seed);
            let side = channel(&mut r, 2, d)?;
            let p = prior(&mut r, 2, 0.2)?;
            let src = CqSource::new(p, side)?;
            let h_cond = conditional_entropy(&src)?;
            let h = src.prior.entropy();
            for rate in [0.5 * h_cond, 0.5 * (h_cond + h), 0.5 * (h + 2f64.ln())] {
                match entropic_sides(rate, &src)? {
                    Some((lhs, rhs)) => t.close(seed, lhs, rhs),
                    None => t.skip(),
                }
            }
            Ok(())
        })();
        if let Err(e) = res {
            t.error(seed, &e);
        }
    }
    let r = t.finish();
    CheckReport::combine(
        ENTROPIC,
        TOLERANCE,
        trials,
        vec![r],
        vec!["types on a step-0.025 grid refined by golden-section search".into()],
    )
}

/// `(E_s(R), min_Q {E_s(R, Q) + D(Q‖P)})` for a binary source, or `None`
/// when the i.i.d. exponent is infinite.
pub fn entropic_sides(rate: f64, src: &CqSource) -> Result<Option<(f64, f64)>> {
    let opts = ExponentOptions::default();
    let lhs = match source_exponent(rate, src, None, &opts)?.value.finite() {
        Some(v) => v,
        None => return Ok(None),
    };
    let p = src.prior.weights().to_vec();
    let mut f = |q: f64| -> Result<f64> {
        let qp = Prior::normalized(vec![q, 1.0 - q])?;
        let kl = crate::oracle::classical::kl(qp.weights(), &p);
        let e = source_exponent(rate, src, Some(&qp), &opts)?.value.to_f64();
        Ok(e + kl)
    };
    let (_, rhs) = grid_golden_min(&mut f, 0.0, 1.0, TYPE_GRID, 1e-6)?;
    Ok(Some((lhs, rhs)))
}

pub fn run_fenchel(cfg: &SuiteConfig) -> CheckReport {
    let trials = cfg.trials_or(DEFAULT_TRIALS);
    let d = cfg.dim.unwrap_or(2);
    let mut t = Tally::new(FENCHEL, TOLERANCE);
    for i in 0..trials {
        let seed = instance_seed(cfg.seed, FENCHEL, i);
        let res = (|| -> Result<()> {
            let (p, ch, src) = fenchel_instance(seed, d)?;
            let (lhs, rhs) = fenchel_sides(&p, &ch, &src)?;
            t.close(seed, lhs, rhs);
            Ok(())
        })();
        if let Err(e) = res {
            t.error(seed, &e);
        }
    }
    let r = t.finish();
    CheckReport::combine(
        FENCHEL,
        TOLERANCE,
        trials,
        vec![r],
        vec![format!(
            "instances with H(X|B)_Q ≥ I(P, W) + {FENCHEL_MARGIN}; rates on a {RATE_GRID}-interval grid refined by golden-section search"
        )],
    )
}

/// A noisy binary channel with prior `P` and a binary source whose
/// conditional entropy exceeds `I(P, W)` by the margin.
fn fenchel_instance(seed: u64, d: usize) -> Result<(Prior, CqChannel, CqSource)> {
    let mut r = rng(seed);
    for _ in 0..MAX_RESAMPLES {
        let noise = r.random_range(0.3..0.7);
        let ch = noisy_channel(&mut r, 2, d, noise)?;
        let p = prior(&mut r, 2, 0.2)?;
        let q = prior(&mut r, 2, 0.3)?;
        let side_noise = r.random_range(0.5..0.9);
        let side = noisy_channel(&mut r, 2, d, side_noise)?;
        let src = CqSource::new(q, side)?;
        if conditional_entropy(&src)? >= holevo_information(&p, &ch)? + FENCHEL_MARGIN {
            return Ok((p, ch, src));
        }
    }
    Err(qexp_core::Error::Numerical(
        "no instance with H(X|B) above I(P, W)".into(),
    ))
}

/// `(min_R {E_s(R, Q) + E_c(R, P)}, max_s {E_{0,s}(s, Q) + E0^{(2),*}(s, P)})`.
pub fn fenchel_sides(p: &Prior, ch: &CqChannel, src: &CqSource) -> Result<(f64, f64)> {
    let opts = ExponentOptions::default();
    let q = src.prior.clone();
    let (_, lhs) = grid_golden_min(
        |rate| {
            let es = source_exponent(rate, src, Some(&q), &opts)?.value.to_f64();
            let ec = channel_exponent_for_prior(rate, p, ch, &opts)?.value.to_f64();
            Ok(es + ec)
        },
        0.0,
        q.entropy(),
        RATE_GRID,
        1e-6,
    )?;
    let o = OptimizerOptions::default();
    let (_, rhs) = golden_max(
        |s| {
            let es = e0_source_type(DivergenceKind::Sandwiched, s, src, &o)?;
            let ec = e0(InfoVariant::Augustin, DivergenceKind::Sandwiched, s, p, ch, &o)?
                .expect_finite("auxiliary function")?;
            Ok(es + ec)
        },
        S_LOWER,
        0.0,
        1e-7,
    )?;
    Ok((lhs, rhs))
}
