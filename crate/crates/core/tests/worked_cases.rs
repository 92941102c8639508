//! Small cases with values that follow from hand algebra.

use std::f64::consts::LN_2;

use num_complex::Complex64;
use qexp_core::matcalc::{
    absolutely_continuous, eig, mexp, mlog, mpow, pinch, random_density, random_prior, schatten_norm,
    support_proj, tensor, PinchingMap,
};
use qexp_core::{
    capacity, channel_exponent_for_prior, conditional_divergence, conditional_renyi_entropy, divergence,
    e0, e0_source_type, gallager_holevo_e0, holevo_information, information, umegaki, variance, CqChannel,
    CqSource, DensityOperator, DivergenceKind, ExponentOptions, ExtendedValue, HermitianOperator,
    InfoVariant, OptimizerOptions, Prior,
};

const KINDS: [DivergenceKind; 3] = [DivergenceKind::Petz, DivergenceKind::Sandwiched, DivergenceKind::LogEuclidean];

fn diag(d: &[f64]) -> HermitianOperator {
    HermitianOperator::from_real_diagonal(d)
}

fn state(d: &[f64]) -> DensityOperator {
    DensityOperator::diagonal(d).unwrap()
}

fn finite(v: ExtendedValue) -> f64 {
    v.finite().expect("finite value")
}

fn distinguishable() -> CqChannel {
    CqChannel::new(vec![state(&[1.0, 0.0]), state(&[0.0, 1.0])]).unwrap()
}

fn identical() -> CqChannel {
    let w = random_density(2, 2, 5).unwrap();
    CqChannel::new(vec![w.clone(), w.clone(), w]).unwrap()
}

fn close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol:e})");
}

#[test]
fn spectra_of_elementary_matrices() {
    assert_eq!(eig(&HermitianOperator::identity(2)).eigenvalues, vec![1.0, 1.0]);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let x = HermitianOperator::new(qexp_core::matcalc::CMatrix::from_row_slice(2, 2, &[zero, one, one, zero])).unwrap();
    let ev = eig(&x).eigenvalues;
    close(ev[0], -1.0, 1e-15);
    close(ev[1], 1.0, 1e-15);
}

#[test]
fn pseudo_functions_respect_the_support() {
    let a = diag(&[4.0, 0.0]);
    assert!(mpow(&a, 0.5, None).unwrap().max_abs_diff(&diag(&[2.0, 0.0])) < 1e-15);
    assert!(mpow(&a, -1.0, None).unwrap().max_abs_diff(&diag(&[0.25, 0.0])) < 1e-15);
    assert!(mlog(&diag(&[0.5, 0.0]), None).unwrap().max_abs_diff(&diag(&[0.5f64.ln(), 0.0])) < 1e-15);
    assert!(mexp(&diag(&[1.0, 0.0])).max_abs_diff(&diag(&[std::f64::consts::E, 1.0])) < 1e-15);
    assert!(support_proj(&diag(&[0.3, 0.0]), None).unwrap().max_abs_diff(&diag(&[1.0, 0.0])) < 1e-15);
}

#[test]
fn log_and_exp_are_inverse_on_full_rank_states() {
    let rho = random_density(3, 3, 11).unwrap();
    let back = mexp(&mlog(rho.as_operator(), None).unwrap());
    assert!(back.max_abs_diff(rho.as_operator()) < 1e-9);
}

#[test]
fn support_inclusion() {
    let pure = diag(&[1.0, 0.0]);
    let mixed = diag(&[0.5, 0.5]);
    assert!(absolutely_continuous(&pure, &mixed, None).unwrap());
    assert!(!absolutely_continuous(&mixed, &pure, None).unwrap());
}

#[test]
fn schatten_norms_and_tensors() {
    let a = diag(&[3.0, -4.0]);
    close(schatten_norm(&a, 1.0).unwrap(), 7.0, 1e-14);
    close(schatten_norm(&a, f64::INFINITY).unwrap(), 4.0, 1e-14);
    assert!(schatten_norm(&a, 0.5).is_err());
    let t = tensor(&diag(&[1.0, 0.0]), &diag(&[0.0, 1.0]));
    assert!(t.max_abs_diff(&diag(&[0.0, 1.0, 0.0, 0.0])) < 1e-15);
}

#[test]
fn pinching_is_idempotent() {
    let rho = random_density(4, 4, 3).unwrap();
    let e = PinchingMap::blocks(4, vec![vec![0, 2], vec![1], vec![3]]).unwrap();
    let once = pinch(&e, rho.as_operator()).unwrap();
    assert!(pinch(&e, &once).unwrap().max_abs_diff(&once) < 1e-15);
    let f = PinchingMap::factor(2, 2).unwrap();
    let once = pinch(&f, rho.as_operator()).unwrap();
    assert!(pinch(&f, &once).unwrap().max_abs_diff(&once) < 1e-14);
    close(once.trace(), 1.0, 1e-12);
}

#[test]
fn random_generators_are_deterministic() {
    assert_eq!(random_density(3, 2, 9).unwrap(), random_density(3, 2, 9).unwrap());
    assert_eq!(random_prior(4, 9).unwrap(), random_prior(4, 9).unwrap());
    let pure = random_density(2, 1, 1).unwrap();
    close(eig(pure.as_operator()).eigenvalues[0], 0.0, 1e-12);
}

#[test]
fn divergence_elementary_values() {
    let rho = random_density(3, 3, 2).unwrap();
    for k in KINDS {
        assert_eq!(finite(divergence(k, rho.as_operator(), rho.as_operator(), 0.5).unwrap()), 0.0);
    }
    let v = divergence(DivergenceKind::Petz, &diag(&[1.0, 0.0]), &diag(&[0.5, 0.5]), 2.0).unwrap();
    close(finite(v), LN_2, 1e-14);
    for a in [0.3, 0.5, 0.9, 1.5, 3.0] {
        let v = divergence(DivergenceKind::Sandwiched, &diag(&[1.0, 0.0]), &diag(&[0.5, 0.5]), a).unwrap();
        close(finite(v), LN_2, 1e-13);
    }
}

#[test]
fn support_violations_are_infinite_above_one() {
    let v = divergence(DivergenceKind::Petz, &diag(&[0.5, 0.5]), &diag(&[1.0, 0.0]), 2.0).unwrap();
    assert_eq!(v, ExtendedValue::PosInfinity);
    assert_eq!(umegaki(&diag(&[0.5, 0.5]), &diag(&[1.0, 0.0])).unwrap(), ExtendedValue::PosInfinity);
    close(finite(umegaki(&diag(&[1.0, 0.0]), &diag(&[0.5, 0.5])).unwrap()), LN_2, 1e-14);
}

#[test]
fn commuting_variance_matches_scalar_formula() {
    let (p, q): ([f64; 2], [f64; 2]) = ([0.7, 0.3], [0.4, 0.6]);
    let d: f64 = p.iter().zip(&q).map(|(a, b)| a * (a / b).ln()).sum();
    let second: f64 = p.iter().zip(&q).map(|(a, b)| a * (a / b).ln().powi(2)).sum();
    for k in KINDS {
        close(variance(k, &state(&p), &diag(&q)).unwrap(), second - d * d, 1e-13);
    }
}

#[test]
fn conditional_divergence_of_orthogonal_outputs() {
    let ch = distinguishable();
    let sigma = DensityOperator::maximally_mixed(2);
    let v = conditional_divergence(DivergenceKind::Petz, &Prior::uniform(2), &ch, sigma.as_operator(), 2.0).unwrap();
    close(finite(v), LN_2, 1e-14);
}

#[test]
fn information_of_degenerate_channels() {
    let opts = OptimizerOptions::default();
    for variant in [InfoVariant::Renyi, InfoVariant::Augustin] {
        for k in KINDS {
            for a in [0.6, 1.0, 2.0] {
                let d = information(variant, k, &Prior::uniform(2), &distinguishable(), a, &opts).unwrap();
                close(finite(d.value), LN_2, 1e-7);
                let i = information(variant, k, &Prior::uniform(3), &identical(), a, &opts).unwrap();
                close(finite(i.value), 0.0, 1e-7);
            }
        }
    }
}

#[test]
fn holevo_of_two_pure_states() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let zero = DensityOperator::pure(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
    let plus = DensityOperator::pure(&[Complex64::new(s, 0.0), Complex64::new(s, 0.0)]).unwrap();
    let ch = CqChannel::new(vec![zero, plus]).unwrap();
    // The average has eigenvalues (1 ± 1/√2)/2.
    let l = (1.0 + s) / 2.0;
    let h = -l * l.ln() - (1.0 - l) * (1.0 - l).ln();
    close(holevo_information(&Prior::uniform(2), &ch).unwrap(), h, 1e-13);
}

#[test]
fn auxiliary_function_on_the_zero_error_channel() {
    let opts = OptimizerOptions::default();
    let p = Prior::uniform(2);
    for s in [-0.5, 0.0, 0.5, 2.0] {
        let v = e0(InfoVariant::Renyi, DivergenceKind::Petz, s, &p, &distinguishable(), &opts).unwrap();
        close(finite(v), s * LN_2, 1e-12);
        close(gallager_holevo_e0(s, &p, &distinguishable()).unwrap(), s * LN_2, 1e-12);
    }
}

#[test]
fn capacity_of_degenerate_channels() {
    let opts = ExponentOptions::default();
    let c = capacity(InfoVariant::Renyi, DivergenceKind::Petz, &distinguishable(), 1.0, &opts).unwrap();
    close(finite(c.value), LN_2, 1e-9);
    let c = capacity(InfoVariant::Renyi, DivergenceKind::Petz, &identical(), 1.0, &opts).unwrap();
    close(finite(c.value), 0.0, 1e-9);
}

#[test]
fn zero_error_channel_exponents() {
    let opts = ExponentOptions::default();
    let p = Prior::uniform(2);
    let at_capacity = channel_exponent_for_prior(LN_2, &p, &distinguishable(), &opts).unwrap();
    close(finite(at_capacity.value), 0.0, 1e-6);
    assert!(!at_capacity.unbounded);
    let below = channel_exponent_for_prior(LN_2 / 2.0, &p, &distinguishable(), &opts).unwrap();
    assert!(below.unbounded);
}

#[test]
fn source_with_trivial_side_information() {
    let opts = OptimizerOptions::default();
    let w = random_density(2, 2, 8).unwrap();
    let src = CqSource::new(Prior::uniform(2), CqChannel::new(vec![w.clone(), w]).unwrap()).unwrap();
    for k in [DivergenceKind::Petz, DivergenceKind::Sandwiched] {
        close(conditional_renyi_entropy(k, &src, 2.0, &opts).unwrap(), LN_2, 1e-7);
        for s in [-0.4, 0.7] {
            close(e0_source_type(k, s, &src, &opts).unwrap(), -s * LN_2, 1e-7);
        }
    }
    let revealing = CqSource::new(Prior::uniform(2), distinguishable()).unwrap();
    close(conditional_renyi_entropy(DivergenceKind::Petz, &revealing, 1.0, &opts).unwrap(), 0.0, 1e-12);
}
