//! Concavity of `s ↦ E0^{(i),(t)}(s, P)` by second differences on uniform
//! grids, on `(−1, 0)` and `(0, ∞)` separately, plus a finite-difference
//! continuity check at sampled points.
//!
//! Petz and sandwiched are checked on the step-0.02 grids; the
//! log-Euclidean family on a step-0.1 grid over the same ranges.

use qexp_core::{CqChannel, DivergenceKind, InfoVariant, Prior, Result};

use crate::instances::{channel, instance_seed, prior, rng};
use crate::report::{CheckReport, Tally};
use crate::warm::WarmInfo;
use crate::SuiteConfig;

pub const NAME: &str = "concavity-in-s";
pub const TOLERANCE: f64 = 1e-7;
const CONTINUITY_TOLERANCE: f64 = 1e-9;
const DEFAULT_TRIALS: usize = 30;
const STEP: f64 = 0.02;
const COARSE_STEP: f64 = 0.1;
const CONTINUITY_POINTS: [f64; 2] = [-0.5, 0.5];
const CONTINUITY_STEPS: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// Grid points of `(lo, hi)` with spacing `h`, ordered outward from `s = 0`.
fn segment(from: f64, to: f64, h: f64) -> Vec<f64> {
    let n = ((to - from).abs() / h).round() as usize;
    let dir = if to >= from { 1.0 } else { -1.0 };
    (0..=n).map(|j| from + dir * j as f64 * h).collect()
}

/// Channels cycle through `d ∈ {2, 3}` and `k ∈ {2, 3, 4}`.
pub fn run(cfg: &SuiteConfig) -> CheckReport {
    let trials = cfg.trials_or(DEFAULT_TRIALS);
    let mut fine = Tally::new("concavity-petz-sandwiched", TOLERANCE);
    let mut coarse = Tally::new("concavity-log-euclidean", TOLERANCE);
    let mut continuity = Tally::new("continuity-in-s", CONTINUITY_TOLERANCE);
    for i in 0..trials {
        let seed = instance_seed(cfg.seed, NAME, i);
        let d = cfg.dim.unwrap_or(2 + i % 2);
        let k = 2 + i % 3;
        let built = (|| -> Result<(CqChannel, Prior)> {
            let mut r = rng(seed);
            let ch = channel(&mut r, k, d)?;
            let p = prior(&mut r, k, 0.1)?;
            Ok((ch, p))
        })();
        let (ch, p) = match built {
            Ok(x) => x,
            Err(e) => {
                fine.error(seed, &e);
                continue;
            }
        };
        for variant in InfoVariant::ALL {
            for kind in [DivergenceKind::Petz, DivergenceKind::Sandwiched] {
                if let Err(e) = series(seed, variant, kind, &p, &ch, STEP, &mut fine) {
                    fine.error(seed, &e);
                }
                if let Err(e) = continuity_at(seed, variant, kind, &p, &ch, &mut continuity) {
                    continuity.error(seed, &e);
                }
            }
            if let Err(e) = series(seed, variant, DivergenceKind::LogEuclidean, &p, &ch, COARSE_STEP, &mut coarse) {
                coarse.error(seed, &e);
            }
        }
    }
    CheckReport::combine(
        NAME,
        TOLERANCE,
        trials,
        vec![fine.finish(), coarse.finish(), continuity.finish()],
        vec![format!(
            "grids of step {STEP} on [-0.9, -0.02] and [0.02, 3]; log-Euclidean step {COARSE_STEP}"
        )],
    )
}

fn series(
    seed: u64,
    variant: InfoVariant,
    kind: DivergenceKind,
    p: &Prior,
    ch: &CqChannel,
    h: f64,
    t: &mut Tally,
) -> Result<()> {
    for (from, to) in [(-h, -0.9), (h, 3.0)] {
        let grid = segment(from, to, h);
        let mut w = WarmInfo::new(variant, kind);
        let vals = grid
            .iter()
            .map(|&s| w.e0(s, p, ch))
            .collect::<Result<Vec<_>>>()?;
        for j in 1..vals.len() - 1 {
            let second = vals[j - 1] - 2.0 * vals[j] + vals[j + 1];
            t.check(seed, second.max(0.0) / (1.0 + vals[j].abs()));
        }
    }
    Ok(())
}

fn continuity_at(
    seed: u64,
    variant: InfoVariant,
    kind: DivergenceKind,
    p: &Prior,
    ch: &CqChannel,
    t: &mut Tally,
) -> Result<()> {
    for &s0 in &CONTINUITY_POINTS {
        let mut w = WarmInfo::new(variant, kind);
        let e0 = w.e0(s0, p, ch)?;
        let diffs = CONTINUITY_STEPS
            .iter()
            .map(|&h| Ok((w.e0(s0 + h, p, ch)? - e0).abs()))
            .collect::<Result<Vec<f64>>>()?;
        // A Lipschitz function shrinks tenfold with the step; allow a factor 2.
        for pair in diffs.windows(2) {
            t.at_most(seed, pair[1], 0.2 * pair[0]);
        }
    }
    Ok(())
}
