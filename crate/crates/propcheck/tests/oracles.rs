//! Library values against the independent reference computations.

use qexp_core::matcalc::random_density;
use qexp_core::{
    augustin_information, capacity, channel_exponent_for_prior, conditional_renyi_entropy, e0,
    gallager_holevo_e0, holevo_information, renyi_information, CqChannel, CqSource, DivergenceKind,
    ExponentOptions, InfoVariant, OptimizerOptions, Prior,
};
use qexp_propcheck::oracle::bloch::{self, BlochGrid};
use qexp_propcheck::oracle::classical;
use qexp_propcheck::oracle::direct::{objective, Objective};

const TOL: f64 = 1e-4;

fn qubit_channel(seed: u64, k: usize) -> CqChannel {
    CqChannel::new((0..k as u64).map(|i| random_density(2, 2, 100 * seed + i).unwrap()).collect()).unwrap()
}

fn bloch_min(obj: Objective, kind: DivergenceKind, p: &Prior, ch: &CqChannel, alpha: f64) -> f64 {
    bloch::minimize(|s| objective(obj, kind, p, ch, alpha, s.as_operator()), &BlochGrid::default())
        .unwrap()
        .value
}

fn close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol:e})");
}

#[test]
fn petz_renyi_information_matches_bloch_minimum() {
    let (p, ch) = (Prior::new(vec![0.4, 0.6]).unwrap(), qubit_channel(1, 2));
    let got = renyi_information(DivergenceKind::Petz, &p, &ch, 0.7, &OptimizerOptions::default()).unwrap();
    close(got.value.to_f64(), bloch_min(Objective::Renyi, DivergenceKind::Petz, &p, &ch, 0.7), TOL);
}

#[test]
fn sandwiched_renyi_information_matches_bloch_minimum() {
    let (p, ch) = (Prior::uniform(2), qubit_channel(2, 2));
    let got = renyi_information(DivergenceKind::Sandwiched, &p, &ch, 2.0, &OptimizerOptions::default()).unwrap();
    close(got.value.to_f64(), bloch_min(Objective::Renyi, DivergenceKind::Sandwiched, &p, &ch, 2.0), TOL);
}

#[test]
fn augustin_information_matches_bloch_minimum() {
    let p = Prior::new(vec![0.2, 0.5, 0.3]).unwrap();
    let ch = qubit_channel(3, 3);
    let opts = OptimizerOptions::default();
    for (kind, alpha) in [(DivergenceKind::Petz, 0.6), (DivergenceKind::Sandwiched, 0.75)] {
        let got = augustin_information(kind, &p, &ch, alpha, &opts).unwrap();
        close(got.value.to_f64(), bloch_min(Objective::Augustin, kind, &p, &ch, alpha), TOL);
    }
}

#[test]
fn conditional_entropy_matches_bloch_maximum() {
    let src = CqSource::new(Prior::new(vec![0.3, 0.7]).unwrap(), qubit_channel(4, 2)).unwrap();
    let got = conditional_renyi_entropy(DivergenceKind::Sandwiched, &src, 2.0, &OptimizerOptions::default()).unwrap();
    let min = bloch_min(Objective::Conditional, DivergenceKind::Sandwiched, &src.prior, &src.side_info, 2.0);
    close(got, -min, TOL);
}

#[test]
fn auxiliary_function_matches_gallager_form() {
    let (p, ch) = (Prior::new(vec![0.35, 0.65]).unwrap(), qubit_channel(5, 2));
    let v = e0(InfoVariant::Renyi, DivergenceKind::Petz, 0.5, &p, &ch, &OptimizerOptions::default()).unwrap();
    close(v.to_f64(), gallager_holevo_e0(0.5, &p, &ch).unwrap(), 1e-6);
}

#[test]
fn diagonal_channel_matches_scalar_gallager() {
    let rows = vec![vec![0.8, 0.15, 0.05], vec![0.1, 0.3, 0.6]];
    let ch = CqChannel::new(rows.iter().map(|r| qexp_core::DensityOperator::diagonal(r).unwrap()).collect()).unwrap();
    let p = [0.45, 0.55];
    let prior = Prior::new(p.to_vec()).unwrap();
    for s in [-0.4, 0.3, 1.5] {
        close(gallager_holevo_e0(s, &prior, &ch).unwrap(), classical::e0(true, s, &p, &rows).unwrap(), 1e-12);
    }
}

#[test]
fn holevo_capacity_matches_simplex_grid() {
    let ch = qubit_channel(6, 2);
    let c = capacity(InfoVariant::Renyi, DivergenceKind::Petz, &ch, 1.0, &ExponentOptions::default()).unwrap();
    let best = (0..=1000)
        .map(|i| {
            let q = i as f64 / 1000.0;
            holevo_information(&Prior::new(vec![q, 1.0 - q]).unwrap(), &ch).unwrap()
        })
        .fold(f64::NEG_INFINITY, f64::max);
    close(c.value.to_f64(), best, TOL);
    assert!(c.value.to_f64() >= best - 1e-9);
}

#[test]
fn channel_exponent_matches_s_grid() {
    let ch = qubit_channel(7, 2);
    let p = Prior::uniform(2);
    let opts = ExponentOptions::default();
    let i = holevo_information(&p, &ch).unwrap();
    let rate = 0.5 * i;
    let r = channel_exponent_for_prior(rate, &p, &ch, &opts).unwrap();
    // Below I(P,W) the maximizer is positive, where the Petz Augustin branch is used.
    let s0 = r.argmax_s.s();
    assert!(s0 > 0.0);
    let oracle_opts = OptimizerOptions::default();
    let best = (-500..=500)
        .map(|j| s0 + j as f64 * 1e-4)
        .filter(|&s| s > 0.0)
        .map(|s| {
            let v = e0(InfoVariant::Augustin, DivergenceKind::Petz, s, &p, &ch, &oracle_opts).unwrap();
            v.to_f64() - s * rate
        })
        .fold(f64::NEG_INFINITY, f64::max);
    close(r.value.to_f64(), best, 1e-5);
}
