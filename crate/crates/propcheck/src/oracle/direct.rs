//! Divergences evaluated straight from their trace functionals with matrix
//! powers, logarithms and exponentials, plus the information objectives built
//! on them. No spectral shortcuts are shared with the library's own routines.

use qexp_core::matcalc::{mexp, mlog, mpow};
use qexp_core::{CqChannel, DivergenceKind, Error, HermitianOperator, Prior, Result};

/// `Q_α(ρ‖σ)`: `Tr ρ^α σ^{1−α}` (Petz), `Tr (σ^{(1−α)/2α} ρ σ^{(1−α)/2α})^α`
/// (sandwiched) or `Tr exp(α log ρ + (1−α) log σ)` (log-Euclidean, full-rank
/// inputs only).
pub fn trace_functional(
    kind: DivergenceKind,
    rho: &HermitianOperator,
    sigma: &HermitianOperator,
    alpha: f64,
) -> Result<f64> {
    match kind {
        DivergenceKind::Petz => Ok(mpow(rho, alpha, None)?.trace_product(&mpow(sigma, 1.0 - alpha, None)?)),
        DivergenceKind::Sandwiched => {
            let s = mpow(sigma, (1.0 - alpha) / (2.0 * alpha), None)?;
            Ok(mpow(&s.sandwich(rho), alpha, None)?.trace())
        }
        DivergenceKind::LogEuclidean => {
            if !full_rank(rho) || !full_rank(sigma) {
                return Err(Error::InvalidParameter(
                    "log-Euclidean oracle needs full-rank inputs".into(),
                ));
            }
            let h = &mlog(rho, Some(0.0))?.scale(alpha) + &mlog(sigma, Some(0.0))?.scale(1.0 - alpha);
            Ok(mexp(&h).trace())
        }
    }
}

fn full_rank(a: &HermitianOperator) -> bool {
    qexp_core::matcalc::eig(a).min_eigenvalue() > 0.0
}

/// Umegaki relative entropy `Tr ρ(log ρ − log σ) / Tr ρ` for full-rank `σ`.
pub fn relative_entropy(rho: &HermitianOperator, sigma: &HermitianOperator) -> Result<f64> {
    let x = &mlog(rho, None)? - &mlog(sigma, Some(0.0))?;
    Ok(rho.trace_product(&x) / rho.trace())
}

/// `D_α(ρ‖σ)` normalized by `Tr ρ`.
pub fn renyi(kind: DivergenceKind, rho: &HermitianOperator, sigma: &HermitianOperator, alpha: f64) -> Result<f64> {
    if alpha == 1.0 {
        return relative_entropy(rho, sigma);
    }
    let q = trace_functional(kind, rho, sigma, alpha)?;
    Ok((q / rho.trace()).ln() / (alpha - 1.0))
}

/// Relative entropy variance at `α = 1` for full-rank `ρ` and `σ`:
/// `Tr ρ X² − D²` with `X = log ρ − log σ` (Petz and sandwiched), and the
/// Duhamel form `∫₀¹ Tr ρ^{1−t} X ρ^t X dt − D²` (log-Euclidean) by
/// composite Simpson quadrature.
pub fn variance(kind: DivergenceKind, rho: &HermitianOperator, sigma: &HermitianOperator) -> Result<f64> {
    let x = &mlog(rho, None)? - &mlog(sigma, None)?;
    let d = rho.trace_product(&x);
    let second = match kind {
        DivergenceKind::Petz | DivergenceKind::Sandwiched => {
            rho.trace_product(&x.sandwich(&HermitianOperator::identity(rho.dim())))
        }
        DivergenceKind::LogEuclidean => {
            const N: usize = 200;
            let mut acc = 0.0;
            for i in 0..=N {
                let t = i as f64 / N as f64;
                let w = if i == 0 || i == N {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                let a = mpow(rho, 1.0 - t, None)?;
                let b = mpow(rho, t, None)?;
                acc += w * a.trace_product(&x.sandwich(&b));
            }
            acc / (3.0 * N as f64)
        }
    };
    Ok(second - d * d)
}

/// Which information objective to minimize over states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// `D_α(P∘W ‖ P⊗σ) = 1/(α−1) log Σ P(x) Q_α(W_x‖σ)`.
    Renyi,
    /// `Σ P(x) D_α(W_x‖σ)`.
    Augustin,
    /// `D_α(ρ_XB ‖ 𝟙⊗σ) = 1/(α−1) log Σ P(x)^α Q_α(ρ_x‖σ)`, whose minimum is
    /// `−H_α(X|B)`.
    Conditional,
}

pub fn objective(
    obj: Objective,
    kind: DivergenceKind,
    prior: &Prior,
    channel: &CqChannel,
    alpha: f64,
    sigma: &HermitianOperator,
) -> Result<f64> {
    let terms = prior
        .weights()
        .iter()
        .zip(channel.outputs())
        .filter(|(&p, _)| p > 0.0);
    if obj == Objective::Augustin || alpha == 1.0 {
        let mut acc = 0.0;
        for (&p, w) in terms {
            acc += p * renyi(kind, w, sigma, alpha)?;
        }
        if obj == Objective::Conditional {
            acc += prior.weights().iter().filter(|&&p| p > 0.0).map(|p| p * p.ln()).sum::<f64>();
        }
        return Ok(acc);
    }
    let mut s = 0.0;
    for (&p, w) in terms {
        let c = match obj {
            Objective::Conditional => p.powf(alpha),
            _ => p,
        };
        s += c * trace_functional(kind, w, sigma, alpha)?;
    }
    Ok(s.ln() / (alpha - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qexp_core::DensityOperator;

    #[test]
    fn commuting_inputs_reduce_to_scalars() {
        let rho = DensityOperator::diagonal(&[0.2, 0.8]).unwrap();
        let sigma = DensityOperator::diagonal(&[0.6, 0.4]).unwrap();
        let a: f64 = 1.7;
        let expected = (0.2f64.powf(a) * 0.6f64.powf(1.0 - a) + 0.8f64.powf(a) * 0.4f64.powf(1.0 - a)).ln() / (a - 1.0);
        for kind in DivergenceKind::ALL {
            let d = renyi(kind, &rho, &sigma, a).unwrap();
            assert!((d - expected).abs() < 1e-13, "{kind:?}");
        }
        let v = 0.2 * (0.2f64 / 0.6).ln().powi(2) + 0.8 * (0.8f64 / 0.4).ln().powi(2)
            - (0.2 * (0.2f64 / 0.6).ln() + 0.8 * (0.8f64 / 0.4).ln()).powi(2);
        for kind in DivergenceKind::ALL {
            assert!((variance(kind, &rho, &sigma).unwrap() - v).abs() < 1e-12);
        }
    }
}
