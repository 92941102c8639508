//! Commuting instances against the scalar formulas: divergences, both
//! information quantities, `E0` and `E_c(R, P)`, for all three families.

use qexp_core::{
    channel_exponent_for_prior, divergence, e0, information, CqChannel, DivergenceKind,
    ExponentOptions, InfoVariant, OptimizerOptions, Prior, Result,
};

use crate::instances::{diagonal_channel, instance_seed, prior, rng};
use crate::oracle::classical;
use crate::report::{CheckReport, Tally};
use crate::SuiteConfig;

pub const NAME: &str = "classical-reduction";
pub const TOLERANCE: f64 = 1e-8;
const DEFAULT_TRIALS: usize = 100;

const DIV_ALPHAS: [f64; 4] = [0.3, 0.8, 1.0, 2.5];
const INFO_ALPHAS: [f64; 2] = [0.5, 2.0];
const E0_S: [f64; 2] = [-0.4, 0.6];
const RATE_FACTORS: [f64; 2] = [0.5, 1.5];

struct Tallies {
    divergence: Tally,
    information: Tally,
    e0: Tally,
    exponent: Tally,
}

/// Output dimension and alphabet size cycle through {2, 3}² unless `dim`
/// fixes the output dimension (2 or 3).
pub fn run(cfg: &SuiteConfig) -> CheckReport {
    let trials = cfg.trials_or(DEFAULT_TRIALS);
    let mut t = Tallies {
        divergence: Tally::new("classical-divergence", TOLERANCE),
        information: Tally::new("classical-information", TOLERANCE),
        e0: Tally::new("classical-e0", TOLERANCE),
        exponent: Tally::new("classical-exponent", TOLERANCE),
    };
    for i in 0..trials {
        let seed = instance_seed(cfg.seed, NAME, i);
        let d = cfg.dim.map(|d| d.clamp(2, 3)).unwrap_or(2 + i % 2);
        let k = 2 + (i / 2) % 2;
        if let Err(e) = instance(seed, k, d, &mut t) {
            t.divergence.error(seed, &e);
        }
    }
    CheckReport::combine(
        NAME,
        TOLERANCE,
        trials,
        vec![
            t.divergence.finish(),
            t.information.finish(),
            t.e0.finish(),
            t.exponent.finish(),
        ],
        vec![],
    )
}

fn rows(ch: &CqChannel) -> Vec<Vec<f64>> {
    ch.outputs()
        .iter()
        .map(|w| (0..w.dim()).map(|j| w.matrix()[(j, j)].re).collect())
        .collect()
}

fn instance(seed: u64, k: usize, d: usize, t: &mut Tallies) -> Result<()> {
    let mut r = rng(seed);
    let ch = diagonal_channel(&mut r, k, d)?;
    let p: Prior = prior(&mut r, k, 0.1)?;
    let w = rows(&ch);
    let opts = OptimizerOptions::default();
    for kind in DivergenceKind::ALL {
        for &a in &DIV_ALPHAS {
            let lib = divergence(kind, &ch.outputs()[0], &ch.outputs()[1], a)?.to_f64();
            t.divergence.close(seed, lib, classical::renyi(&w[0], &w[1], a));
        }
        for &a in &INFO_ALPHAS {
            let i1 = information(InfoVariant::Renyi, kind, &p, &ch, a, &opts)?;
            t.information.close(seed, i1.value.to_f64(), classical::sibson(p.weights(), &w, a));
            let i2 = information(InfoVariant::Augustin, kind, &p, &ch, a, &opts)?;
            t.information.close(seed, i2.value.to_f64(), classical::augustin(p.weights(), &w, a)?);
        }
        for &s in &E0_S {
            for variant in InfoVariant::ALL {
                let lib = e0(variant, kind, s, &p, &ch, &opts)?.to_f64();
                let oracle = classical::e0(variant == InfoVariant::Renyi, s, p.weights(), &w)?;
                t.e0.close(seed, lib, oracle);
            }
        }
    }
    let mi = classical::mutual_information(p.weights(), &w);
    let eopts = ExponentOptions::default();
    for &u in &RATE_FACTORS {
        let rate = u * mi;
        let lib = channel_exponent_for_prior(rate, &p, &ch, &eopts)?.value.to_f64();
        let oracle = classical::channel_exponent(rate, p.weights(), &w, eopts.lower, eopts.upper)?;
        t.exponent.close(seed, lib, oracle);
    }
    Ok(())
}
