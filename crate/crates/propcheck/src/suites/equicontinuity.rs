//! Explicit equicontinuity moduli in the prior.
//!
//! For each family an order cap `η` is paired with the order range where the
//! family is well behaved: Petz `η = 1` with `α ∈ (0, 1]`, sandwiched `η = 2`
//! with `α ∈ [1/2, 2]`, log-Euclidean `η = 2` with `α ∈ (0, 2]`. The bound
//! uses the order-`η` Rényi capacity. The `η = 0` branch is evaluated for the
//! Petz family at `α = 0` on a channel with pure outputs and recorded only.

use qexp_core::matcalc::random_density_with;
use qexp_core::{
    capacity, information, CqChannel, DivergenceKind, ExponentOptions, InfoVariant,
    OptimizerOptions, Prior, Result,
};
use rand::Rng;

use crate::bounds::{total_variation, EquicontinuityBound};
use crate::instances::{channel, instance_seed, prior, rng};
use crate::report::{CheckReport, Tally};
use crate::warm::WarmInfo;
use crate::SuiteConfig;

pub const NAME: &str = "equicontinuity";
pub const TOLERANCE: f64 = 1e-7;
const DEFAULT_TRIALS: usize = 100;
const CHANNELS: usize = 5;

/// `(kind, η, lowest sampled order)`.
pub const FAMILIES: [(DivergenceKind, f64, f64); 3] = [
    (DivergenceKind::Petz, 1.0, 0.05),
    (DivergenceKind::Sandwiched, 2.0, 0.5),
    (DivergenceKind::LogEuclidean, 2.0, 0.05),
];

pub fn run(cfg: &SuiteConfig) -> CheckReport {
    let (renyi, augustin, eta0) = collect(cfg, true, true);
    CheckReport::combine(
        NAME,
        TOLERANCE,
        cfg.trials_or(DEFAULT_TRIALS) * CHANNELS,
        vec![renyi.finish(), augustin.finish(), eta0.finish()],
        vec![],
    )
}

pub fn run_renyi(cfg: &SuiteConfig) -> CheckReport {
    let (renyi, _, eta0) = collect(cfg, true, false);
    CheckReport::combine(
        "equicontinuity-renyi",
        TOLERANCE,
        cfg.trials_or(DEFAULT_TRIALS) * CHANNELS,
        vec![renyi.finish(), eta0.finish()],
        vec![],
    )
}

pub fn run_augustin(cfg: &SuiteConfig) -> CheckReport {
    let (_, augustin, _) = collect(cfg, false, true);
    CheckReport::combine(
        "equicontinuity-augustin",
        TOLERANCE,
        cfg.trials_or(DEFAULT_TRIALS) * CHANNELS,
        vec![augustin.finish()],
        vec![],
    )
}

/// Prior pair `j`: identical priors, disjoint point masses, a close pair or
/// two independent priors.
pub fn prior_pair(seed: u64, j: usize, k: usize) -> Result<(Prior, Prior)> {
    let mut r = rng(seed);
    Ok(match j {
        0 => {
            let p = prior(&mut r, k, 0.0)?;
            (p.clone(), p)
        }
        1 => (Prior::point_mass(k, 0), Prior::point_mass(k, 1)),
        _ if j % 3 == 2 => {
            let p = prior(&mut r, k, 0.0)?;
            let q = prior(&mut r, k, 0.0)?;
            let t = r.random_range(0.0..0.1);
            let close = p.mix(&q, t);
            (p, close)
        }
        _ => (prior(&mut r, k, 0.0)?, prior(&mut r, k, 0.0)?),
    })
}

fn collect(cfg: &SuiteConfig, do_renyi: bool, do_augustin: bool) -> (Tally, Tally, Tally) {
    let trials = cfg.trials_or(DEFAULT_TRIALS);
    let d = cfg.dim.unwrap_or(2);
    let k = 3;
    let mut renyi = Tally::new("equicontinuity-renyi-bound", TOLERANCE);
    let mut augustin = Tally::new("equicontinuity-augustin-bound", TOLERANCE);
    let mut eta0 = Tally::new("equicontinuity-renyi-eta0", TOLERANCE).record_only();
    for c in 0..CHANNELS {
        let seed = instance_seed(cfg.seed, NAME, c);
        let ch = match channel(&mut rng(seed), k, d) {
            Ok(ch) => ch,
            Err(e) => {
                renyi.error(seed, &e);
                continue;
            }
        };
        for &(kind, eta, lowest) in &FAMILIES {
            let cap = match capacity(InfoVariant::Renyi, kind, &ch, eta, &ExponentOptions::default())
                .and_then(|c| c.value.expect_finite("capacity"))
            {
                Ok(c) => c,
                Err(e) => {
                    renyi.error(seed, &e);
                    continue;
                }
            };
            let mut w1 = WarmInfo::new(InfoVariant::Renyi, kind);
            let mut w2 = WarmInfo::new(InfoVariant::Augustin, kind);
            for j in 0..trials {
                let pseed = instance_seed(seed, kind.name(), j);
                let res = (|| -> Result<()> {
                    let (p1, p2) = prior_pair(pseed, j, k)?;
                    let alpha = rng(pseed ^ 0xa1fa).random_range(lowest..=eta);
                    let delta = total_variation(p1.weights(), p2.weights());
                    if do_renyi {
                        let diff = (w1.info(&p2, &ch, alpha)? - w1.info(&p1, &ch, alpha)?).abs();
                        renyi.at_most(pseed, diff, EquicontinuityBound::renyi(delta, eta, cap).bound);
                    }
                    if do_augustin {
                        let diff = (w2.info(&p2, &ch, alpha)? - w2.info(&p1, &ch, alpha)?).abs();
                        augustin.at_most(pseed, diff, EquicontinuityBound::augustin(delta, eta, cap).bound);
                    }
                    Ok(())
                })();
                if let Err(e) = res {
                    renyi.error(pseed, &e);
                }
            }
        }
    }
    if do_renyi {
        let seed = instance_seed(cfg.seed, "equicontinuity-eta0", 0);
        if let Err(e) = eta_zero(seed, trials, &mut eta0) {
            eta0.error(seed, &e);
        }
    }
    (renyi, augustin, eta0)
}

fn eta_zero(seed: u64, trials: usize, t: &mut Tally) -> Result<()> {
    let mut r = rng(seed);
    let outs = (0..3)
        .map(|_| random_density_with(&mut r, 2, 1))
        .collect::<Result<Vec<_>>>()?;
    let ch = CqChannel::new(outs)?;
    let cap = capacity(InfoVariant::Renyi, DivergenceKind::Petz, &ch, 0.0, &ExponentOptions::default())?
        .value
        .expect_finite("capacity")?;
    let opts = OptimizerOptions::default();
    let i0 = |p: &Prior| -> Result<f64> {
        information(InfoVariant::Renyi, DivergenceKind::Petz, p, &ch, 0.0, &opts)?
            .value
            .expect_finite("information")
    };
    for j in 0..trials {
        let pseed = instance_seed(seed, "pair", j);
        let (p1, p2) = prior_pair(pseed, j, 3)?;
        let delta = total_variation(p1.weights(), p2.weights());
        let diff = (i0(&p2)? - i0(&p1)?).abs();
        t.at_most(pseed, diff, EquicontinuityBound::renyi(delta, 0.0, cap).bound);
    }
    Ok(())
}
