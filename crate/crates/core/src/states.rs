//! Minimization over density operators.
//!
//! States are parameterized as `σ = exp(H) / Tr exp(H)` with `H` traceless
//! Hermitian, expanded in the orthonormal generalized Gell-Mann basis, so
//! every point of `R^{d²−1}` is a full-rank state. The eigendecomposition of
//! `H` gives the spectrum of `σ` together with exact log-eigenvalues.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcalc::{assemble, eig_matrix, CMatrix, DensityOperator, HermitianOperator, Spectrum};
use crate::optim::{bfgs, nelder_mead, LocalMin};

/// Options shared by the state-space minimizer and the fixed-point iteration.
#[derive(Clone, Debug)]
pub struct OptimizerOptions {
    /// Step-size (minimizer) or trace-distance (fixed point) tolerance.
    pub tolerance: f64,
    /// Relative objective change regarded as stationary by the derivative-free stage.
    pub objective_tolerance: f64,
    pub max_iterations: usize,
    /// Initial damping of the fixed-point iteration.
    pub damping: f64,
    pub seed: u64,
    /// Bloch-ball prescan step for qubits; `None` disables the prescan.
    /// The prescan is skipped whenever warm starts are supplied.
    pub prescan_step: Option<f64>,
    /// Caller-provided starting states.
    pub warm_starts: Vec<DensityOperator>,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            objective_tolerance: 1e-10,
            max_iterations: 10_000,
            damping: 0.0,
            seed: 0,
            prescan_step: Some(0.05),
            warm_starts: Vec::new(),
        }
    }
}

impl OptimizerOptions {
    pub fn with_warm_start(mut self, state: DensityOperator) -> Self {
        self.warm_starts = vec![state];
        self
    }
}

/// Coordinates of traceless Hermitian matrices in the generalized Gell-Mann
/// basis `{G_k}` with `Tr[G_k G_l] = δ_kl`.
pub(crate) struct ExpChart {
    dim: usize,
}

impl ExpChart {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }

    pub fn n_coords(&self) -> usize {
        self.dim * self.dim - 1
    }

    pub fn hermitian(&self, x: &[f64]) -> CMatrix {
        let d = self.dim;
        let mut h = CMatrix::zeros(d, d);
        let mut idx = 0;
        for j in 0..d {
            for k in (j + 1)..d {
                let (xs, xa) = (x[idx], x[idx + 1]);
                idx += 2;
                h[(j, k)] = Complex64::new(xs, -xa) / SQRT_2;
                h[(k, j)] = Complex64::new(xs, xa) / SQRT_2;
            }
        }
        for l in 1..d {
            let norm = ((l * (l + 1)) as f64).sqrt();
            let v = x[idx];
            idx += 1;
            for i in 0..l {
                h[(i, i)].re += v / norm;
            }
            h[(l, l)].re -= v * l as f64 / norm;
        }
        h
    }

    pub fn coords(&self, h: &CMatrix) -> Vec<f64> {
        let d = self.dim;
        let mut x = Vec::with_capacity(self.n_coords());
        for j in 0..d {
            for k in (j + 1)..d {
                x.push(SQRT_2 * h[(j, k)].re);
                x.push(-SQRT_2 * h[(j, k)].im);
            }
        }
        for l in 1..d {
            let norm = ((l * (l + 1)) as f64).sqrt();
            let s: f64 = (0..l).map(|i| h[(i, i)].re).sum::<f64>() - l as f64 * h[(l, l)].re;
            x.push(s / norm);
        }
        x
    }

    pub fn spectrum(&self, x: &[f64]) -> Spectrum {
        let sd = eig_matrix(&self.hermitian(x));
        let m = sd.max_eigenvalue();
        let lse = m + sd
            .eigenvalues
            .iter()
            .map(|h| (h - m).exp())
            .sum::<f64>()
            .ln();
        let logs = sd.eigenvalues.iter().map(|h| h - lse).collect();
        Spectrum::from_logs(sd.eigenvectors, logs)
    }

    pub fn state(&self, x: &[f64]) -> DensityOperator {
        let s = self.spectrum(x);
        DensityOperator::trusted(HermitianOperator::symmetrized(s.matrix()))
    }

    /// Chart coordinates of a state; eigenvalues are floored at `1e-14` so
    /// boundary states map to nearby interior points.
    pub fn coords_of(&self, state: &HermitianOperator) -> Vec<f64> {
        let sd = eig_matrix(state.matrix());
        let top = sd.max_eigenvalue().max(f64::MIN_POSITIVE);
        let logs: Vec<f64> = sd
            .eigenvalues
            .iter()
            .map(|l| (l / top).max(1e-14).ln())
            .collect();
        let mean = logs.iter().sum::<f64>() / logs.len() as f64;
        let centered: Vec<f64> = logs.iter().map(|l| l - mean).collect();
        self.coords(&assemble(&sd.eigenvectors, &centered))
    }
}

/// Outcome of a state-space minimization.
pub(crate) struct StateMin {
    pub state: DensityOperator,
    pub value: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Minimizes a spectral objective over full-rank states: best of the
/// maximally mixed state, the supplied starts and (qubits, cold start only)
/// a Bloch-ball prescan, refined by Nelder–Mead on cold starts and polished
/// by finite-difference BFGS.
pub(crate) fn minimize_spectral<F>(
    mut objective: F,
    dim: usize,
    starts: &[DensityOperator],
    opts: &OptimizerOptions,
) -> Result<StateMin>
where
    F: FnMut(&Spectrum) -> Result<f64>,
{
    if dim == 0 {
        return Err(Error::InvalidParameter("zero dimension".into()));
    }
    let chart = ExpChart::new(dim);
    let warm = !opts.warm_starts.is_empty();
    let scanned = match opts.prescan_step {
        Some(step) if dim == 2 && !warm => Some(bloch_prescan(&mut objective, step)),
        _ => None,
    };
    let mut first_err: Option<Error> = None;
    let mut f = |x: &[f64]| -> f64 {
        match objective(&chart.spectrum(x)) {
            Ok(v) if v.is_nan() => f64::INFINITY,
            Ok(v) => v,
            Err(e) => {
                first_err.get_or_insert(e);
                f64::INFINITY
            }
        }
    };
    if dim == 1 {
        let v = f(&[]);
        return Ok(StateMin {
            state: DensityOperator::maximally_mixed(1),
            value: v,
            iterations: 0,
            residual: 0.0,
        });
    }
    let mut candidates: Vec<Vec<f64>> = vec![vec![0.0; chart.n_coords()]];
    for s in starts.iter().chain(&opts.warm_starts) {
        if s.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.dim(),
            });
        }
        candidates.push(chart.coords_of(s));
    }
    if let Some(r) = scanned {
        candidates.push(chart.coords_of(&crate::matcalc::bloch_operator(r)));
    }
    let mut best: Option<(Vec<f64>, f64)> = None;
    for x in candidates {
        let v = f(&x);
        if best.as_ref().is_none_or(|b| v < b.1) {
            best = Some((x, v));
        }
    }
    let (mut x0, _) = best.expect("at least one candidate");
    let n = chart.n_coords();
    let mut iterations = 0;
    if !warm {
        let nm = nelder_mead(&mut f, &x0, 0.5, opts.objective_tolerance, 1e-4, 200 * n);
        iterations += nm.iterations;
        x0 = nm.x;
    }
    let mut local: LocalMin = bfgs(&mut f, &x0, opts.tolerance, 1e-9, opts.max_iterations);
    iterations += local.iterations;
    if !local.converged {
        // Re-seed the quasi-Newton model after a derivative-free pass.
        let nm = nelder_mead(
            &mut f,
            &local.x,
            0.05,
            opts.objective_tolerance,
            1e-6,
            200 * n,
        );
        let retry = bfgs(&mut f, &nm.x, opts.tolerance, 1e-9, opts.max_iterations);
        iterations += nm.iterations + retry.iterations;
        local = retry;
    }
    if !local.converged {
        // Nearly non-smooth objectives (very large orders) defeat the
        // finite-difference gradient; finish with a fine simplex search.
        let nm = nelder_mead(&mut f, &local.x, 1e-3, 0.0, opts.tolerance, 2000 * n);
        iterations += nm.iterations;
        if nm.converged && nm.value <= local.value {
            local = nm;
        }
    }
    if !local.value.is_finite() {
        if let Some(e) = first_err {
            return Err(e);
        }
    }
    if !local.converged {
        return Err(Error::NonConvergence {
            iterations,
            residual: local.last_step,
        });
    }
    Ok(StateMin {
        state: chart.state(&local.x),
        value: local.value,
        iterations,
        residual: local.last_step,
    })
}

/// Best point of a Bloch-ball grid with spacing `step`, evaluated on
/// closed-form spectra. A grid four times coarser locates the basin; the
/// fine grid covers the neighbouring coarse cells.
fn bloch_prescan<F>(objective: &mut F, step: f64) -> [f64; 3]
where
    F: FnMut(&Spectrum) -> Result<f64>,
{
    let limit = 1.0 - step / 2.0;
    let coarse = 4.0 * step;
    let n = (1.0 / coarse).floor() as i64;
    let mut best = ([0.0; 3], f64::INFINITY);
    let mut visit = |r: [f64; 3], best: &mut ([f64; 3], f64)| {
        if (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt() > limit {
            return;
        }
        match objective(&bloch_spectrum(r)) {
            Ok(v) if v < best.1 => *best = (r, v),
            _ => {}
        }
    };
    for i in -n..=n {
        for j in -n..=n {
            for k in -n..=n {
                let r = [i as f64 * coarse, j as f64 * coarse, k as f64 * coarse];
                visit(r, &mut best);
            }
        }
    }
    let center = best.0;
    for i in -4..=4i64 {
        for j in -4..=4i64 {
            for k in -4..=4i64 {
                let r = [
                    center[0] + i as f64 * step,
                    center[1] + j as f64 * step,
                    center[2] + k as f64 * step,
                ];
                visit(r, &mut best);
            }
        }
    }
    best.0
}

/// Spectrum of `(𝟙 + r·σ)/2` for `|r| < 1`.
fn bloch_spectrum(r: [f64; 3]) -> Spectrum {
    let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    let logs = vec![(0.5 * (1.0 - norm)).ln(), (0.5 * (1.0 + norm)).ln()];
    if norm == 0.0 {
        return Spectrum::from_logs(CMatrix::identity(2, 2), logs);
    }
    let theta = r[0].hypot(r[1]).atan2(r[2]);
    let phase = Complex64::from_polar(1.0, r[1].atan2(r[0]));
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    // Columns: eigenvalue (1−|r|)/2, then (1+|r|)/2.
    let v = CMatrix::from_row_slice(
        2,
        2,
        &[
            -phase.conj() * s,
            Complex64::new(c, 0.0),
            Complex64::new(c, 0.0),
            phase * s,
        ],
    );
    Spectrum::from_logs(v, logs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcalc::{mexp, random_density};

    #[test]
    fn chart_roundtrip() {
        for d in 2..=4 {
            let chart = ExpChart::new(d);
            let x: Vec<f64> = (0..chart.n_coords())
                .map(|i| 0.1 * i as f64 - 0.3)
                .collect();
            let h = chart.hermitian(&x);
            let back = chart.coords(&h);
            for (a, b) in x.iter().zip(&back) {
                assert!((a - b).abs() < 1e-14);
            }
            assert!(h.trace().norm() < 1e-14);
        }
    }

    #[test]
    fn chart_state_matches_exponential() {
        let chart = ExpChart::new(3);
        let x = [0.2, -0.1, 0.4, 0.3, -0.5, 0.0, 0.7, -0.2];
        let h = HermitianOperator::new(chart.hermitian(&x)).unwrap();
        let e = mexp(&h);
        let want = e.scale(1.0 / e.trace());
        assert!(chart.state(&x).max_abs_diff(&want) < 1e-14);
        let rho = random_density(3, 3, 2).unwrap();
        let y = chart.coords_of(&rho);
        assert!(chart.state(&y).max_abs_diff(&rho) < 1e-12);
    }

    #[test]
    fn bloch_spectrum_reconstructs_state() {
        for r in [[0.3, -0.2, 0.5], [0.0, 0.0, -0.9], [0.1, 0.0, 0.0], [0.0, 0.0, 0.0]] {
            let s = bloch_spectrum(r);
            let want = crate::matcalc::bloch_operator(r);
            let got = HermitianOperator::new(s.matrix()).unwrap();
            assert!(got.max_abs_diff(&want) < 1e-15, "{r:?}");
        }
    }

    #[test]
    fn minimizes_trace_distance_proxy() {
        // Minimizer of D(ρ‖σ) over σ is ρ itself.
        let rho = random_density(3, 3, 5).unwrap();
        let r = Spectrum::of(&rho, None).unwrap();
        let obj = |s: &Spectrum| Ok(crate::divergence::umegaki_spec(&r, s, &r.overlap(s)).to_f64());
        let m = minimize_spectral(obj, 3, &[], &OptimizerOptions::default()).unwrap();
        assert!(m.value.abs() < 1e-12, "{}", m.value);
        assert!(m.state.max_abs_diff(&rho) < 1e-6);
    }
}
