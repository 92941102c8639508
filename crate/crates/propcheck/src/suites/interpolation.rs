//! Interpolation inequalities.
//!
//! Pinching form: `‖x‖_p = Tr[(E(x^p))^{1/p}]` satisfies
//! `‖x‖_p ≤ ‖x‖_{p₀}^{1−θ} ‖x‖_{p₁}^θ` for `1/p = (1−θ)/p₀ + θ/p₁`, with `E` a
//! block pinching or the factor map `X ↦ 𝟙/2 ⊗ Tr_A X` on `2 ⊗ 2`. For the
//! factor map the closed form is also compared with the variational form
//! `inf_τ Tr[x^p (𝟙/2⊗τ)^{1−p}]^{1/p}`.
//!
//! Product form: on a `4 × 4` state `ρ`, `F(1/p) = log inf_σ N_p(ρ, σ⊗σ)` is
//! midpoint convex in `1/p`, where `N_p` is
//! `‖(σ⊗σ)^{(1−p)/2p} ρ (σ⊗σ)^{(1−p)/2p}‖_p` (sandwiched form) or
//! `Tr[ρ^p (σ⊗σ)^{1−p}]^{1/p}` (Petz form). Infima come from the Bloch-ball
//! grid oracle. The same check with the exponent sign flipped,
//! `(σ⊗σ)^{(p−1)/2p}`, is recorded for comparison.

use qexp_core::matcalc::{mpow, pinch, schatten_norm, tensor, PinchingMap};
use qexp_core::{DensityOperator, HermitianOperator, Result};
use rand::Rng;

use crate::instances::{full_rank_state, instance_seed, psd, rng};
use crate::oracle::bloch::{self, BlochGrid};
use crate::report::{CheckReport, Tally};
use crate::SuiteConfig;

pub const NAME: &str = "interpolation";
pub const PETZ_TOLERANCE: f64 = 1e-9;
pub const PRODUCT_TOLERANCE: f64 = 1e-6;
const REPRESENTATION_TOLERANCE: f64 = 1e-6;
const DEFAULT_PETZ_TRIALS: usize = 100;
const DEFAULT_PRODUCT_TRIALS: usize = 30;
const U_POINTS: usize = 7;

pub fn run(cfg: &SuiteConfig) -> CheckReport {
    let petz = run_petz(cfg);
    let product = run_product(cfg);
    let instances = petz.instances + product.instances;
    CheckReport::combine(NAME, PETZ_TOLERANCE, instances, vec![petz, product], vec![])
}

/// Bar norm `Tr[(E(x^p))^{1/p}]`.
pub fn bar_norm(e: &PinchingMap, x: &HermitianOperator, p: f64) -> Result<f64> {
    let ex = pinch(e, &mpow(x, p, None)?)?;
    Ok(mpow(&ex, 1.0 / p, None)?.trace())
}

fn pinching(i: usize) -> Result<PinchingMap> {
    match i % 4 {
        0 => PinchingMap::blocks(4, vec![vec![0, 1], vec![2, 3]]),
        1 => PinchingMap::factor(2, 2),
        2 => PinchingMap::blocks(4, vec![vec![0], vec![1, 2, 3]]),
        _ => PinchingMap::blocks(4, vec![vec![0, 2], vec![1], vec![3]]),
    }
}

pub fn run_petz(cfg: &SuiteConfig) -> CheckReport {
    let trials = cfg.trials_or(DEFAULT_PETZ_TRIALS);
    let mut t = Tally::new("interpolation-petz-inequality", PETZ_TOLERANCE);
    let mut rep = Tally::new("interpolation-petz-representation", REPRESENTATION_TOLERANCE);
    for i in 0..trials {
        let seed = instance_seed(cfg.seed, "interpolation-petz", i);
        if let Err(e) = petz_instance(seed, i, &mut t, &mut rep) {
            t.error(seed, &e);
        }
    }
    CheckReport::combine(
        "interpolation-petz",
        PETZ_TOLERANCE,
        trials,
        vec![t.finish(), rep.finish()],
        vec![],
    )
}

fn petz_instance(seed: u64, i: usize, t: &mut Tally, rep: &mut Tally) -> Result<()> {
    let mut r = rng(seed);
    let rank = r.random_range(1..=4);
    let scale = r.random_range(0.2..5.0);
    let x = psd(&mut r, 4, rank, scale)?;
    let e = pinching(i)?;
    let p0 = 1.0 + 5.0 * (1.0 - r.random::<f64>());
    let p1 = 1.0 + 5.0 * (1.0 - r.random::<f64>());
    let l0 = bar_norm(&e, &x, p0)?.ln();
    let l1 = bar_norm(&e, &x, p1)?.ln();
    for theta in [0.0, r.random::<f64>(), r.random::<f64>(), 1.0] {
        let p = 1.0 / ((1.0 - theta) / p0 + theta / p1);
        let lp = bar_norm(&e, &x, p)?.ln();
        t.at_most(seed, lp, (1.0 - theta) * l0 + theta * l1);
    }
    if matches!(e, PinchingMap::Factor { .. }) {
        let p = 1.0 + 5.0 * (1.0 - r.random::<f64>());
        let xp = mpow(&x, p, None)?;
        let half = HermitianOperator::identity(2).scale(0.5f64.powf(1.0 - p));
        let m = bloch::minimize(
            |tau| {
                let s = tensor(&half, &mpow(tau, 1.0 - p, None)?);
                Ok(xp.trace_product(&s).powf(1.0 / p))
            },
            &BlochGrid::default(),
        )?;
        rep.close(seed, m.value, bar_norm(&e, &x, p)?);
    }
    Ok(())
}

/// Which product-form functional.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductForm {
    Sandwiched,
    Petz,
    /// Sandwiched form with the exponent `(p−1)/2p`.
    FlippedSandwiched,
}

/// `log inf_σ N_p(ρ, σ⊗σ)` over qubit states `σ`.
pub fn product_functional(form: ProductForm, rho: &HermitianOperator, p: f64) -> Result<f64> {
    let rho_p = mpow(rho, p, None)?;
    let m = bloch::minimize(
        |s: &DensityOperator| {
            let v = match form {
                ProductForm::Petz => {
                    let a = mpow(s, 1.0 - p, None)?;
                    rho_p.trace_product(&tensor(&a, &a)).powf(1.0 / p)
                }
                ProductForm::Sandwiched | ProductForm::FlippedSandwiched => {
                    let e = (1.0 - p) / (2.0 * p);
                    let e = if form == ProductForm::Sandwiched { e } else { -e };
                    let a = mpow(s, e, None)?;
                    schatten_norm(&tensor(&a, &a).sandwich(rho), p)?
                }
            };
            Ok(v.ln())
        },
        &BlochGrid::default(),
    )?;
    Ok(m.value)
}

fn u_grid() -> Vec<f64> {
    let (lo, hi) = (1.0 / 4.0, 1.0 / 1.2);
    (0..U_POINTS)
        .map(|j| lo + j as f64 * (hi - lo) / (U_POINTS - 1) as f64)
        .collect()
}

pub fn run_product(cfg: &SuiteConfig) -> CheckReport {
    let trials = cfg.trials_or(DEFAULT_PRODUCT_TRIALS);
    let mut sw = Tally::new("interpolation-product-sandwiched", PRODUCT_TOLERANCE);
    let mut pz = Tally::new("interpolation-product-petz", PRODUCT_TOLERANCE);
    let mut flipped = Tally::new("interpolation-product-flipped-exponent", PRODUCT_TOLERANCE).record_only();
    for i in 0..trials {
        let seed = instance_seed(cfg.seed, "interpolation-product", i);
        let rho = match full_rank_state(&mut rng(seed), 4) {
            Ok(r) => r,
            Err(e) => {
                sw.error(seed, &e);
                continue;
            }
        };
        for (form, t) in [
            (ProductForm::Sandwiched, &mut sw),
            (ProductForm::Petz, &mut pz),
            (ProductForm::FlippedSandwiched, &mut flipped),
        ] {
            if let Err(e) = midpoint_convexity(seed, form, &rho, t) {
                t.error(seed, &e);
            }
        }
    }
    CheckReport::combine(
        "interpolation-product",
        PRODUCT_TOLERANCE,
        trials,
        vec![sw.finish(), pz.finish(), flipped.finish()],
        vec![format!("{U_POINTS} equally spaced values of 1/p on [1/4, 1/1.2], n = 2")],
    )
}

fn midpoint_convexity(seed: u64, form: ProductForm, rho: &HermitianOperator, t: &mut Tally) -> Result<()> {
    let f = u_grid()
        .iter()
        .map(|&u| product_functional(form, rho, 1.0 / u))
        .collect::<Result<Vec<_>>>()?;
    for w in f.windows(3) {
        t.at_most(seed, w[1], 0.5 * (w[0] + w[2]));
    }
    Ok(())
}
