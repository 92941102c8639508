//! The Petz–Augustin mean: fixed-point residual of the returned mean, its
//! value against a Bloch-ball grid minimization, and the two-sided
//! inequality between `D_α(W‖τ|P) − I_α` and divergences of the mean.

use qexp_core::information::petz_augustin_fixed_point;
use qexp_core::matcalc::{mpow, trace_distance};
use qexp_core::{CqChannel, DivergenceKind, HermitianOperator, OptimizerOptions, Prior, Result};

use crate::instances::{channel, full_rank_state, instance_seed, prior, rng};
use crate::oracle::bloch::{self, BlochGrid};
use crate::oracle::direct::{self, Objective};
use crate::report::{CheckReport, Tally};
use crate::SuiteConfig;

pub const NAME: &str = "augustin-mean";
pub const TOLERANCE: f64 = 1e-8;
const ORACLE_TOLERANCE: f64 = 1e-4;
const DEFAULT_TRIALS: usize = 50;
pub const ALPHAS: [f64; 4] = [0.3, 0.6, 1.5, 2.5];
const TAUS: usize = 3;

/// `trials` random `d = 2`, `k = 3` instances, each at every order.
pub fn run(cfg: &SuiteConfig) -> CheckReport {
    let trials = cfg.trials_or(DEFAULT_TRIALS);
    let mut residual = Tally::new("augustin-residual", TOLERANCE);
    let mut oracle = Tally::new("augustin-oracle", ORACLE_TOLERANCE);
    let mut inequality = Tally::new("augustin-inequality", TOLERANCE);
    for i in 0..trials {
        let seed = instance_seed(cfg.seed, NAME, i);
        if let Err(e) = instance(seed, &mut residual, &mut oracle, &mut inequality) {
            residual.error(seed, &e);
        }
    }
    CheckReport::combine(
        NAME,
        TOLERANCE,
        trials,
        vec![residual.finish(), oracle.finish(), inequality.finish()],
        vec![],
    )
}

/// `½‖T(σ) − σ‖₁` for `T(σ) = Σ P σ^{(1−α)/2} W^α σ^{(1−α)/2} / Tr[...]`.
pub fn fixed_point_residual(prior: &Prior, ch: &CqChannel, sigma: &HermitianOperator, alpha: f64) -> Result<f64> {
    let half = mpow(sigma, (1.0 - alpha) / 2.0, None)?;
    let mut acc = HermitianOperator::zero(sigma.dim());
    for (&p, w) in prior.weights().iter().zip(ch.outputs()) {
        if p > 0.0 {
            let num = half.sandwich(&mpow(w, alpha, None)?);
            acc = &acc + &num.scale(p / num.trace());
        }
    }
    Ok(trace_distance(&acc, sigma))
}

fn instance(seed: u64, residual: &mut Tally, oracle: &mut Tally, inequality: &mut Tally) -> Result<()> {
    let mut r = rng(seed);
    let ch = channel(&mut r, 3, 2)?;
    let p = prior(&mut r, 3, 0.1)?;
    let taus = (0..TAUS)
        .map(|_| full_rank_state(&mut r, 2))
        .collect::<Result<Vec<_>>>()?;
    let kind = DivergenceKind::Petz;
    for &a in &ALPHAS {
        let m = petz_augustin_fixed_point(&p, &ch, a, &OptimizerOptions::default())?;
        let value = m.value.expect_finite("Augustin information")?;
        residual.check(seed, fixed_point_residual(&p, &ch, &m.mean, a)?);

        let grid = bloch::minimize(
            |s| direct::objective(Objective::Augustin, kind, &p, &ch, a, s),
            &BlochGrid::default(),
        )?;
        oracle.close(seed, value, grid.value);

        for tau in &taus {
            let cond = direct::objective(Objective::Augustin, kind, &p, &ch, a, tau)?;
            let gap = cond - value;
            let d_alpha = direct::renyi(kind, &m.mean, tau, a)?;
            if a < 1.0 {
                inequality.at_most(seed, d_alpha, gap);
            } else {
                inequality.at_most(seed, gap, d_alpha);
                inequality.at_most(seed, direct::relative_entropy(&m.mean, tau)?, gap);
            }
        }
    }
    Ok(())
}
