//! Basic laws of the three divergence families on random pairs: ordering of
//! the families, monotonicity in the order, non-negativity, antitonicity
//! and convexity in the second argument.
//!
//! Antitonicity and convexity are checked only on the order ranges where
//! they hold; other orders count as skipped. Endpoint orders enter only when
//! the library evaluates them exactly rather than by extrapolation.

use qexp_core::{divergence_detailed, DensityOperator, DivergenceKind, HermitianOperator, Result};
use rand::Rng;

use crate::instances::{any_rank_state, full_rank_state, instance_seed, psd, rng};
use crate::report::{CheckReport, Tally};
use crate::SuiteConfig;

pub const NAME: &str = "divergence-laws";
pub const TOLERANCE: f64 = 1e-9;
const DEFAULT_TRIALS: usize = 200;

const ALPHAS: [f64; 15] = [
    0.0,
    0.1,
    0.3,
    0.5,
    0.7,
    0.9,
    0.99,
    1.0,
    1.01,
    1.5,
    2.0,
    3.0,
    5.0,
    10.0,
    f64::INFINITY,
];

const KINDS: [DivergenceKind; 3] = DivergenceKind::ALL;

struct Tallies {
    ordering: Tally,
    monotonicity: Tally,
    nonnegativity: Tally,
    antitonicity: Tally,
    convexity: Tally,
}

/// Instances cycle through dimensions 2, 3 and 4 unless `dim` is fixed.
pub fn run(cfg: &SuiteConfig) -> CheckReport {
    let trials = cfg.trials_or(DEFAULT_TRIALS);
    let dims = cfg.dim.map(|d| vec![d]).unwrap_or_else(|| vec![2, 3, 4]);
    let mut t = Tallies {
        ordering: Tally::new("ordering", TOLERANCE),
        monotonicity: Tally::new("monotonicity", TOLERANCE),
        nonnegativity: Tally::new("non-negativity", TOLERANCE),
        antitonicity: Tally::new("antitonicity", TOLERANCE),
        convexity: Tally::new("convexity", TOLERANCE),
    };
    for i in 0..trials {
        let seed = instance_seed(cfg.seed, NAME, i);
        let d = dims[i % dims.len()];
        if let Err(e) = instance(seed, d, &mut t) {
            t.ordering.error(seed, &e);
        }
    }
    CheckReport::combine(
        NAME,
        TOLERANCE,
        trials,
        vec![
            t.ordering.finish(),
            t.monotonicity.finish(),
            t.nonnegativity.finish(),
            t.antitonicity.finish(),
            t.convexity.finish(),
        ],
        vec![],
    )
}

fn antitone_range(kind: DivergenceKind, a: f64) -> bool {
    match kind {
        DivergenceKind::Petz => a <= 1.0,
        DivergenceKind::Sandwiched => a >= 0.5,
        DivergenceKind::LogEuclidean => true,
    }
}

fn convex_range(kind: DivergenceKind, a: f64) -> bool {
    match kind {
        DivergenceKind::Petz => a <= 2.0,
        DivergenceKind::Sandwiched => a >= 0.5,
        DivergenceKind::LogEuclidean => true,
    }
}

/// Exact values only; extrapolated endpoints give `None`.
fn value(kind: DivergenceKind, rho: &HermitianOperator, sigma: &HermitianOperator, a: f64) -> Result<Option<f64>> {
    let v = divergence_detailed(kind, rho, sigma, a)?;
    Ok((!v.limit_estimate).then(|| v.value.to_f64()))
}

fn instance(seed: u64, d: usize, t: &mut Tallies) -> Result<()> {
    let mut r = rng(seed);
    let rho = any_rank_state(&mut r, d)?;
    let sigma = full_rank_state(&mut r, d)?;
    let lo_trace = r.random_range(0.5..1.5);
    let sigma_lo = psd(&mut r, d, d, lo_trace)?;
    let extra_rank = r.random_range(1..=d);
    let extra_trace = r.random_range(0.1..1.0);
    let sigma_hi = &sigma_lo + &psd(&mut r, d, extra_rank, extra_trace)?;
    let sigma_a = full_rank_state(&mut r, d)?;
    let sigma_b = full_rank_state(&mut r, d)?;
    let sigma_m: DensityOperator = sigma_a.mix(&sigma_b, 0.5);

    // values[kind][alpha] for D(ρ‖σ)
    let mut values = vec![vec![None; ALPHAS.len()]; KINDS.len()];
    for (ki, &kind) in KINDS.iter().enumerate() {
        for (ai, &a) in ALPHAS.iter().enumerate() {
            let v = value(kind, &rho, &sigma, a)?;
            values[ki][ai] = v;
            let Some(v) = v else { continue };
            t.nonnegativity.at_most(seed, 0.0, v);
            if let Some(selfd) = value(kind, &rho, &rho, a)? {
                t.nonnegativity.close(seed, selfd, 0.0);
            }
            if let Some(vlo) = value(kind, &rho, &sigma_lo, a)? {
                t.nonnegativity.at_most(seed, -lo_trace.ln(), vlo);
            }
            if antitone_range(kind, a) {
                if let (Some(vlo), Some(vhi)) =
                    (value(kind, &rho, &sigma_lo, a)?, value(kind, &rho, &sigma_hi, a)?)
                {
                    t.antitonicity.at_most(seed, vhi, vlo);
                }
            } else {
                t.antitonicity.skip();
            }
            if convex_range(kind, a) {
                if let (Some(va), Some(vb), Some(vm)) = (
                    value(kind, &rho, &sigma_a, a)?,
                    value(kind, &rho, &sigma_b, a)?,
                    value(kind, &rho, &sigma_m, a)?,
                ) {
                    t.convexity.at_most(seed, vm, 0.5 * (va + vb));
                }
            } else {
                t.convexity.skip();
            }
        }
        let present: Vec<f64> = values[ki].iter().flatten().copied().collect();
        for w in present.windows(2) {
            t.monotonicity.at_most(seed, w[0], w[1]);
        }
    }
    let (petz, sw, le) = (0, 1, 2);
    debug_assert_eq!(KINDS[petz], DivergenceKind::Petz);
    debug_assert_eq!(KINDS[sw], DivergenceKind::Sandwiched);
    for (ai, &a) in ALPHAS.iter().enumerate() {
        let (p, s, l) = (values[petz][ai], values[sw][ai], values[le][ai]);
        if a <= 1.0 {
            if let (Some(s), Some(p)) = (s, p) {
                t.ordering.at_most(seed, s, p);
            }
            if let (Some(p), Some(l)) = (p, l) {
                t.ordering.at_most(seed, p, l);
            }
        }
        if a >= 1.0 {
            if let (Some(l), Some(s)) = (l, s) {
                t.ordering.at_most(seed, l, s);
            }
            if let (Some(s), Some(p)) = (s, p) {
                t.ordering.at_most(seed, s, p);
            }
        }
    }
    Ok(())
}
