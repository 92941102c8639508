//! Exchange of `inf_P` and `sup_s` in the strong-converse regime:
//! `inf_P sup_{s∈(−1,0)} {E0^{(i),*}(s,P) − sR} = sup_s inf_P {…}` at
//! `R = 1.3 · C` for binary-input channels.
//!
//! Both orders are nested one-dimensional searches: over the prior weight a
//! step-0.1 grid refined by golden-section search, over `s` golden-section
//! search (the objective is concave in `s` and convex in `P`).

use qexp_core::exponents::S_LOWER;
use qexp_core::{capacity, CqChannel, DivergenceKind, ExponentOptions, InfoVariant, Prior, Result};

use crate::instances::{channel, instance_seed, rng};
use crate::report::{CheckReport, Tally};
use crate::search::{golden_max, grid_golden_min};
use crate::warm::WarmInfo;
use crate::SuiteConfig;

pub const NAME: &str = "minimax";
pub const TOLERANCE: f64 = 1e-3;
pub const RATE_FACTOR: f64 = 1.3;
const DEFAULT_TRIALS: usize = 10;
const PRIOR_GRID: usize = 10;

pub fn run(cfg: &SuiteConfig) -> CheckReport {
    let trials = cfg.trials_or(DEFAULT_TRIALS);
    let d = cfg.dim.unwrap_or(2);
    let mut t = Tally::new(NAME, TOLERANCE);
    for i in 0..trials {
        let seed = instance_seed(cfg.seed, NAME, i);
        let res = (|| -> Result<()> {
            let ch = channel(&mut rng(seed), 2, d)?;
            for variant in InfoVariant::ALL {
                let (a, b) = minimax_sides(variant, &ch, RATE_FACTOR)?;
                t.close(seed, a, b);
            }
            Ok(())
        })();
        if let Err(e) = res {
            t.error(seed, &e);
        }
    }
    let r = t.finish();
    CheckReport::combine(
        NAME,
        TOLERANCE,
        trials,
        vec![r],
        vec![format!("R = {RATE_FACTOR}·C, prior grid step 0.1 refined by golden-section search")],
    )
}

/// `(inf_P sup_s, sup_s inf_P)` for a binary-input channel.
pub fn minimax_sides(variant: InfoVariant, ch: &CqChannel, rate_factor: f64) -> Result<(f64, f64)> {
    let c = capacity(InfoVariant::Renyi, DivergenceKind::Petz, ch, 1.0, &ExponentOptions::default())?
        .value
        .expect_finite("capacity")?;
    let rate = rate_factor * c;
    let mut w = WarmInfo::new(variant, DivergenceKind::Sandwiched);
    let mut phi = |q: f64, s: f64| -> Result<f64> {
        let e = if q <= 0.0 || q >= 1.0 {
            0.0
        } else {
            w.e0(s, &Prior::normalized(vec![q, 1.0 - q])?, ch)?
        };
        Ok(e - s * rate)
    };
    let inf_sup = grid_golden_min(
        |q| Ok(golden_max(|s| phi(q, s), S_LOWER, 0.0, 1e-7)?.1),
        0.0,
        1.0,
        PRIOR_GRID,
        1e-5,
    )?
    .1;
    let sup_inf = golden_max(
        |s| Ok(grid_golden_min(|q| phi(q, s), 0.0, 1.0, PRIOR_GRID, 1e-6)?.1),
        S_LOWER,
        0.0,
        1e-6,
    )?
    .1;
    Ok((inf_sup, sup_inf))
}
