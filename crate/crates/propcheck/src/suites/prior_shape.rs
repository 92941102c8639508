//! Shape of `P ↦ E0^{(i),(t)}(s, P)`: midpoint convexity for `s ∈ (−1, 0)`,
//! midpoint concavity for `s ≥ 0` (`i = 2`) and midpoint quasi-concavity for
//! `s ≥ 0` (`i = 1`).

use qexp_core::{CqChannel, DivergenceKind, InfoVariant, Prior, Result};

use crate::instances::{channel, instance_seed, prior, rng};
use crate::report::{CheckReport, Tally};
use crate::warm::WarmInfo;
use crate::SuiteConfig;

pub const NAME: &str = "prior-shape";
pub const TOLERANCE: f64 = 1e-8;
const DEFAULT_TRIALS: usize = 50;
const PAIRS_PER_CHANNEL: usize = 10;
pub const S_VALUES: [f64; 4] = [-0.5, -0.1, 0.3, 1.0];

/// `trials` prior pairs, ten per random `k = 3` channel.
pub fn run(cfg: &SuiteConfig) -> CheckReport {
    let trials = cfg.trials_or(DEFAULT_TRIALS);
    let d = cfg.dim.unwrap_or(2);
    let mut t = Tally::new(NAME, TOLERANCE);
    let channels = trials.div_ceil(PAIRS_PER_CHANNEL);
    for c in 0..channels {
        let seed = instance_seed(cfg.seed, NAME, c);
        let ch = match channel(&mut rng(seed), 3, d) {
            Ok(ch) => ch,
            Err(e) => {
                t.error(seed, &e);
                continue;
            }
        };
        let mut warm: Vec<WarmInfo> = Vec::new();
        for variant in InfoVariant::ALL {
            for kind in DivergenceKind::ALL {
                for _ in S_VALUES {
                    warm.push(WarmInfo::new(variant, kind));
                }
            }
        }
        let pairs = PAIRS_PER_CHANNEL.min(trials - c * PAIRS_PER_CHANNEL);
        for j in 0..pairs {
            let pseed = instance_seed(seed, "pair", j);
            if let Err(e) = pair(pseed, &ch, &mut warm, &mut t) {
                t.error(pseed, &e);
            }
        }
    }
    let r = t.finish();
    CheckReport::combine(NAME, TOLERANCE, trials, vec![r], vec![])
}

/// Violation of the shape law at one `(s, i)` for values at `P₁`, `P₂` and
/// the midpoint.
pub fn shape_violation(s: f64, variant: InfoVariant, e1: f64, e2: f64, em: f64) -> f64 {
    let avg = 0.5 * (e1 + e2);
    if s < 0.0 {
        (em - avg).max(0.0)
    } else if variant == InfoVariant::Augustin {
        (avg - em).max(0.0)
    } else {
        (e1.min(e2) - em).max(0.0)
    }
}

fn pair(seed: u64, ch: &CqChannel, warm: &mut [WarmInfo], t: &mut Tally) -> Result<()> {
    let mut r = rng(seed);
    let p1 = prior(&mut r, 3, 0.0)?;
    let p2 = prior(&mut r, 3, 0.0)?;
    let pm: Prior = p1.mix(&p2, 0.5);
    let mut idx = 0;
    for variant in InfoVariant::ALL {
        for _kind in DivergenceKind::ALL {
            for &s in &S_VALUES {
                let w = &mut warm[idx];
                idx += 1;
                let e1 = w.e0(s, &p1, ch)?;
                let em = w.e0(s, &pm, ch)?;
                let e2 = w.e0(s, &p2, ch)?;
                t.check(seed, shape_violation(s, variant, e1, e2, em));
            }
        }
    }
    Ok(())
}
