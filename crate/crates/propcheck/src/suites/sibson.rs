//! Sibson's identity for the Petz divergence.
//!
//! The closed-form Rényi information is compared with a direct minimization
//! of `D_α(P∘W ‖ P⊗σ)` over states, and the decomposition
//! `D_α(P∘W ‖ P⊗τ) = I_α(P,W) + D_α(σ_α‖τ)` is evaluated on random `τ` with
//! the oracle's own matrix functions. A third check covers the identity
//! relative to a subalgebra: `D_α(ρ‖σ) = D_α(σ*‖σ) + α/(α−1) log Tr E(ρ^α)^{1/α}`
//! for `σ` in the range of a pinching `E`.

use qexp_core::channel::classical_product;
use qexp_core::information::petz_renyi_closed_form;
use qexp_core::matcalc::{mpow, pinch, tensor, PinchingMap};
use qexp_core::{
    divergence, joint_state, minimize_over_states, DensityOperator, DivergenceKind,
    HermitianOperator, OptimizerOptions, Result,
};
use rand::Rng;

use crate::instances::{channel, full_rank_state, instance_seed, prior, rng};
use crate::oracle::direct;
use crate::report::{CheckReport, Tally};
use crate::SuiteConfig;

pub const NAME: &str = "sibson";
pub const TOLERANCE: f64 = 1e-8;
const MINIMIZATION_TOLERANCE: f64 = 1e-5;
const DEFAULT_TRIALS: usize = 50;
const ALPHAS: [f64; 5] = [0.3, 0.7, 1.5, 2.0, 4.0];

/// One random `d = 2` channel, one random `τ` and one subalgebra instance per
/// trial.
pub fn run(cfg: &SuiteConfig) -> CheckReport {
    let trials = cfg.trials_or(DEFAULT_TRIALS);
    let mut closed = Tally::new("sibson-closed-form", MINIMIZATION_TOLERANCE);
    let mut decomposition = Tally::new("sibson-decomposition", TOLERANCE);
    let mut subalgebra = Tally::new("sibson-subalgebra", TOLERANCE);
    for i in 0..trials {
        let seed = instance_seed(cfg.seed, NAME, i);
        let a = ALPHAS[i % ALPHAS.len()];
        if let Err(e) = instance(seed, a, &mut closed, &mut decomposition) {
            closed.error(seed, &e);
        }
        if let Err(e) = subalgebra_instance(seed, a, &mut subalgebra) {
            subalgebra.error(seed, &e);
        }
    }
    CheckReport::combine(
        NAME,
        TOLERANCE,
        trials,
        vec![closed.finish(), decomposition.finish(), subalgebra.finish()],
        vec![],
    )
}

fn instance(seed: u64, alpha: f64, closed: &mut Tally, decomposition: &mut Tally) -> Result<()> {
    let mut r = rng(seed);
    let k = r.random_range(2..=3);
    let ch = channel(&mut r, k, 2)?;
    let p = prior(&mut r, k, 0.1)?;
    let tau = full_rank_state(&mut r, 2)?;
    let joint = joint_state(&p, &ch)?;

    let cf = petz_renyi_closed_form(&p, &ch, alpha)?;
    let cf_value = cf.value.expect_finite("closed form")?;
    let m = minimize_over_states(
        |s: &DensityOperator| divergence(DivergenceKind::Petz, &joint, &classical_product(p.weights(), s), alpha),
        2,
        &OptimizerOptions::default(),
    )?;
    closed.close(seed, cf_value, m.value.to_f64());

    let lhs = direct::renyi(
        DivergenceKind::Petz,
        &joint,
        &classical_product(p.weights(), &tau),
        alpha,
    )?;
    let mean_div = direct::renyi(DivergenceKind::Petz, &cf.mean, &tau, alpha)?;
    decomposition.close(seed, lhs, cf_value + mean_div);
    Ok(())
}

fn subalgebra_instance(seed: u64, alpha: f64, t: &mut Tally) -> Result<()> {
    let mut r = rng(seed ^ 0x5151);
    let rho = full_rank_state(&mut r, 4)?;
    let tau = full_rank_state(&mut r, 2)?;
    let e = PinchingMap::factor(2, 2)?;
    let sigma = tensor(&HermitianOperator::identity(2).scale(0.5), &tau);
    let e_rho = pinch(&e, &mpow(&rho, alpha, None)?)?;
    let root = mpow(&e_rho, 1.0 / alpha, None)?;
    let tr = root.trace();
    let star = root.scale(1.0 / tr);
    let lhs = direct::renyi(DivergenceKind::Petz, &rho, &sigma, alpha)?;
    let rhs = direct::renyi(DivergenceKind::Petz, &star, &sigma, alpha)? + alpha / (alpha - 1.0) * tr.ln();
    t.close(seed, lhs, rhs);
    // Second form: the last term is D_α(ρ‖σ*).
    let rhs2 = direct::renyi(DivergenceKind::Petz, &star, &sigma, alpha)?
        + direct::renyi(DivergenceKind::Petz, &rho, &star, alpha)?;
    t.close(seed, lhs, rhs2);
    Ok(())
}
