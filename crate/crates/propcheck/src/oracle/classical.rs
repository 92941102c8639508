//! Scalar formulas for commuting instances.
//!
//! Channels are rows `W_x(y)` of probabilities. Augustin information is
//! found by golden-section search over the output simplex (binary or
//! ternary outputs), which needs nothing but the scalar divergence.

use qexp_core::{Error, Result};

use crate::search::{golden_max, golden_min, grid_golden_max};

/// Classical Rényi divergence `1/(α−1) · log(Σ p^α q^{1−α} / Σ p)`.
pub fn renyi(p: &[f64], q: &[f64], alpha: f64) -> f64 {
    let tp: f64 = p.iter().sum();
    if alpha == 1.0 {
        let mut d = 0.0;
        for (&a, &b) in p.iter().zip(q) {
            if a > 0.0 {
                if b <= 0.0 {
                    return f64::INFINITY;
                }
                d += a * (a / b).ln();
            }
        }
        return d / tp;
    }
    let mut s = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a > 0.0 {
            if b <= 0.0 {
                if alpha > 1.0 {
                    return f64::INFINITY;
                }
                continue;
            }
            s += a.powf(alpha) * b.powf(1.0 - alpha);
        }
    }
    if s <= 0.0 {
        return f64::INFINITY;
    }
    (s / tp).ln() / (alpha - 1.0)
}

/// Kullback–Leibler divergence.
pub fn kl(p: &[f64], q: &[f64]) -> f64 {
    renyi(p, q, 1.0)
}

pub fn entropy(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>()
}

fn output_average(prior: &[f64], rows: &[Vec<f64>]) -> Vec<f64> {
    let d = rows[0].len();
    (0..d)
        .map(|y| prior.iter().zip(rows).map(|(p, r)| p * r[y]).sum())
        .collect()
}

/// Mutual information `Σ P(x) D(W_x ‖ PW)`.
pub fn mutual_information(prior: &[f64], rows: &[Vec<f64>]) -> f64 {
    let q = output_average(prior, rows);
    prior
        .iter()
        .zip(rows)
        .filter(|(&p, _)| p > 0.0)
        .map(|(p, r)| p * kl(r, &q))
        .sum()
}

/// Sibson's closed form `α/(α−1) · log Σ_y (Σ_x P(x) W_x(y)^α)^{1/α}`.
pub fn sibson(prior: &[f64], rows: &[Vec<f64>], alpha: f64) -> f64 {
    if alpha == 1.0 {
        return mutual_information(prior, rows);
    }
    let d = rows[0].len();
    let mut s = 0.0;
    for y in 0..d {
        let inner: f64 = prior
            .iter()
            .zip(rows)
            .filter(|(&p, r)| p > 0.0 && r[y] > 0.0)
            .map(|(p, r)| p * r[y].powf(alpha))
            .sum();
        s += inner.powf(1.0 / alpha);
    }
    alpha / (alpha - 1.0) * s.ln()
}

fn augustin_objective(prior: &[f64], rows: &[Vec<f64>], q: &[f64], alpha: f64) -> f64 {
    prior
        .iter()
        .zip(rows)
        .filter(|(&p, _)| p > 0.0)
        .map(|(p, r)| p * renyi(r, q, alpha))
        .sum()
}

/// Augustin information `min_q Σ_x P(x) D_α(W_x ‖ q)` for two or three
/// outputs.
pub fn augustin(prior: &[f64], rows: &[Vec<f64>], alpha: f64) -> Result<f64> {
    if alpha == 1.0 {
        return Ok(mutual_information(prior, rows));
    }
    const TOL: f64 = 1e-12;
    match rows[0].len() {
        2 => Ok(golden_min(
            |a| Ok(augustin_objective(prior, rows, &[a, 1.0 - a], alpha)),
            0.0,
            1.0,
            TOL,
        )?
        .1),
        3 => Ok(golden_min(
            |a| {
                Ok(golden_min(
                    |b| {
                        let c = (1.0 - a - b).max(0.0);
                        Ok(augustin_objective(prior, rows, &[a, b, c], alpha))
                    },
                    0.0,
                    1.0 - a,
                    TOL,
                )?
                .1)
            },
            0.0,
            1.0,
            TOL,
        )?
        .1),
        d => Err(Error::InvalidParameter(format!(
            "classical Augustin oracle supports 2 or 3 outputs, got {d}"
        ))),
    }
}

/// `s · I_{1/(1+s)}` for Sibson's (`renyi == true`) or Augustin's information.
pub fn e0(renyi: bool, s: f64, prior: &[f64], rows: &[Vec<f64>]) -> Result<f64> {
    if s == 0.0 {
        return Ok(0.0);
    }
    let alpha = 1.0 / (1.0 + s);
    let i = if renyi {
        sibson(prior, rows, alpha)
    } else {
        augustin(prior, rows, alpha)?
    };
    Ok(s * i)
}

/// `sup_{s ∈ [lower, upper]} {E0^{(2)}(s) − sR}` by a coarse grid followed by
/// golden-section search; `E0` is concave in `s`.
pub fn channel_exponent(rate: f64, prior: &[f64], rows: &[Vec<f64>], lower: f64, upper: f64) -> Result<f64> {
    let g = |s: f64| Ok(e0(false, s, prior, rows)? - s * rate);
    let (s, v) = grid_golden_max(g, lower, upper, 80, 1e-9)?;
    // The grid step is coarse; polish around the winner once more.
    let h = (upper - lower) / 80.0;
    let (_, v2) = golden_max(g, (s - h).max(lower), (s + h).min(upper), 1e-10)?;
    Ok(v.max(v2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divergence_limits() {
        let p = [0.2, 0.8];
        let q = [0.5, 0.5];
        let near = renyi(&p, &q, 1.0 + 1e-7);
        assert!((near - kl(&p, &q)).abs() < 1e-6);
        assert_eq!(renyi(&[1.0, 0.0], &[0.0, 1.0], 2.0), f64::INFINITY);
        assert_eq!(renyi(&[1.0, 0.0], &[0.0, 1.0], 0.5), f64::INFINITY);
        assert!(renyi(&[0.5, 0.5], &[1.0, 0.0], 0.5).is_finite());
    }

    #[test]
    fn augustin_brackets_sibson() {
        // I^{(2)} ≥ I^{(1)} for α < 1 and ≤ for α > 1 (Jensen on the log).
        let rows = vec![vec![0.7, 0.2, 0.1], vec![0.1, 0.3, 0.6]];
        let prior = [0.4, 0.6];
        for &a in &[0.4, 0.8] {
            assert!(augustin(&prior, &rows, a).unwrap() >= sibson(&prior, &rows, a) - 1e-12);
        }
        for &a in &[1.5, 3.0] {
            assert!(augustin(&prior, &rows, a).unwrap() <= sibson(&prior, &rows, a) + 1e-12);
        }
    }

    #[test]
    fn sibson_of_noiseless_channel_is_renyi_entropy() {
        let rows = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let prior = [0.3, 0.7];
        let a: f64 = 2.0;
        // I_α(P, id) = H_{1/α}(P).
        let h = (prior.iter().map(|p: &f64| p.powf(1.0 / a)).sum::<f64>()).ln() / (1.0 - 1.0 / a);
        assert!((sibson(&prior, &rows, a) - h).abs() < 1e-14);
    }
}
