//! Sign, monotonicity and derivative rows of the auxiliary functions.
//!
//! Channel auxiliaries `E0^{(i),(t)}(s, P)` are `≤ 0` on `(−1, 0)`, `≥ 0` on
//! `[0, ∞)` and increasing; their first central difference at `s = 0` is the
//! Holevo information and minus their second difference is the variance
//! `V(P∘W ‖ P⊗PW)` (`i = 1`) or `Σ_x P(x) V(W_x ‖ PW)` (`i = 2`). Source
//! auxiliaries have the opposite signs and decrease. The type-dependent sign
//! on `(−1, 0)` is only checked for orders where the Augustin information of
//! a type never exceeds its entropy (Petz `α ≤ 1`, sandwiched `α ≥ 1/2`,
//! log-Euclidean all orders).

use qexp_core::channel::classical_product;
use qexp_core::{
    e0_source_iid, e0_source_type, joint_state, CqChannel, CqSource, DivergenceKind, InfoVariant,
    OptimizerOptions, Prior, Result,
};

use crate::instances::{channel, instance_seed, prior, rng};
use crate::oracle::direct;
use crate::report::{CheckReport, Tally};
use crate::warm::WarmInfo;
use crate::SuiteConfig;

pub const NAME: &str = "auxiliary-functions";
pub const TOLERANCE: f64 = 1e-3;
pub const STEP: f64 = 1e-3;
const FIRST_TOLERANCE: f64 = 1e-3;
const SECOND_TOLERANCE: f64 = 5e-3;
const SIGN_TOLERANCE: f64 = 1e-10;
const MONOTONE_TOLERANCE: f64 = 1e-8;
const DEFAULT_TRIALS: usize = 20;
pub const NEGATIVE_S: [f64; 2] = [-0.4, -0.2];
pub const POSITIVE_S: [f64; 2] = [0.2, 0.6];
pub const MONOTONE_GRID: [f64; 9] = [-0.4, -0.3, -0.2, -0.1, 0.0, 0.2, 0.4, 0.6, 0.8];

struct Tallies {
    first: Tally,
    second: Tally,
    sign: Tally,
    monotone: Tally,
}

pub fn run(cfg: &SuiteConfig) -> CheckReport {
    let trials = cfg.trials_or(DEFAULT_TRIALS);
    let d = cfg.dim.unwrap_or(2);
    let mut t = Tallies {
        first: Tally::new("auxiliary-first-derivative", FIRST_TOLERANCE),
        second: Tally::new("auxiliary-second-derivative", SECOND_TOLERANCE),
        sign: Tally::new("auxiliary-sign", SIGN_TOLERANCE),
        monotone: Tally::new("auxiliary-monotonicity", MONOTONE_TOLERANCE),
    };
    for i in 0..trials {
        let seed = instance_seed(cfg.seed, NAME, i);
        let built = (|| -> Result<(CqChannel, Prior)> {
            let mut r = rng(seed);
            let ch = channel(&mut r, 3, d)?;
            let p = prior(&mut r, 3, 0.1)?;
            Ok((ch, p))
        })();
        let (ch, p) = match built {
            Ok(x) => x,
            Err(e) => {
                t.first.error(seed, &e);
                continue;
            }
        };
        if let Err(e) = instance(seed, &p, &ch, &mut t) {
            t.first.error(seed, &e);
        }
    }
    CheckReport::combine(
        NAME,
        TOLERANCE,
        trials,
        vec![t.first.finish(), t.second.finish(), t.sign.finish(), t.monotone.finish()],
        vec![format!("central differences with h = {STEP}")],
    )
}

/// Whether `I^{(2)}_α(Q, ρ) ≤ H(Q)` is guaranteed for the family at `α`.
pub fn type_sign_guaranteed(kind: DivergenceKind, alpha: f64) -> bool {
    match kind {
        DivergenceKind::Petz => alpha <= 1.0,
        DivergenceKind::Sandwiched => alpha >= 0.5,
        DivergenceKind::LogEuclidean => true,
    }
}

fn instance(seed: u64, p: &Prior, ch: &CqChannel, t: &mut Tallies) -> Result<()> {
    let avg = ch.average(p)?;
    let holevo: f64 = p
        .weights()
        .iter()
        .zip(ch.outputs())
        .map(|(&px, w)| Ok(px * direct::relative_entropy(w, &avg)?))
        .sum::<Result<f64>>()?;
    let joint = joint_state(p, ch)?;
    let product = classical_product(p.weights(), &avg);
    let opts = OptimizerOptions::default();
    let src = CqSource::new(p.clone(), ch.clone())?;

    for kind in DivergenceKind::ALL {
        for variant in InfoVariant::ALL {
            let mut w = WarmInfo::new(variant, kind);
            let plus = w.e0(STEP, p, ch)?;
            let minus = w.e0(-STEP, p, ch)?;
            t.first.close(seed, (plus - minus) / (2.0 * STEP), holevo);
            let var = match variant {
                InfoVariant::Renyi => direct::variance(kind, &joint, &product)?,
                InfoVariant::Augustin => p
                    .weights()
                    .iter()
                    .zip(ch.outputs())
                    .map(|(&px, wx)| Ok(px * direct::variance(kind, wx, &avg)?))
                    .sum::<Result<f64>>()?,
            };
            t.second.close(seed, -(plus + minus) / (STEP * STEP), var);

            for &s in &NEGATIVE_S {
                t.sign.at_most(seed, w.e0(s, p, ch)?, 0.0);
            }
            for &s in &POSITIVE_S {
                t.sign.at_most(seed, 0.0, w.e0(s, p, ch)?);
            }
            w.reset();
            let vals = MONOTONE_GRID
                .iter()
                .map(|&s| w.e0(s, p, ch))
                .collect::<Result<Vec<_>>>()?;
            for pair in vals.windows(2) {
                t.monotone.at_most(seed, pair[0], pair[1]);
            }
        }

        let iid = MONOTONE_GRID
            .iter()
            .map(|&s| e0_source_iid(kind, s, &src, &opts))
            .collect::<Result<Vec<_>>>()?;
        let typed = MONOTONE_GRID
            .iter()
            .map(|&s| e0_source_type(kind, s, &src, &opts))
            .collect::<Result<Vec<_>>>()?;
        for (j, &s) in MONOTONE_GRID.iter().enumerate() {
            if s < 0.0 {
                t.sign.at_most(seed, 0.0, iid[j]);
                if type_sign_guaranteed(kind, 1.0 / (1.0 + s)) {
                    t.sign.at_most(seed, 0.0, typed[j]);
                } else {
                    t.sign.skip();
                }
            } else {
                t.sign.at_most(seed, iid[j], 0.0);
                t.sign.at_most(seed, typed[j], 0.0);
            }
            if j + 1 < MONOTONE_GRID.len() {
                t.monotone.at_most(seed, iid[j + 1], iid[j]);
                if s >= 0.0 {
                    t.monotone.at_most(seed, typed[j + 1], typed[j]);
                }
            }
        }
    }
    Ok(())
}
