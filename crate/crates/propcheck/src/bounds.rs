//! Explicit continuity moduli of the information quantities in the prior.
//!
//! `δ = ½‖P₁ − P₂‖₁` and `C` is an order-`η` Rényi capacity of the channel.

use serde::{Deserialize, Serialize};

/// Binary entropy `−δ log δ − (1−δ) log(1−δ)` in nats.
pub fn binary_entropy(delta: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
    term(delta) + term(1.0 - delta)
}

/// `g(δ, α, γ)`: `δγ` at `α = 1`, else `1/(1−α) · log((1−δ) + δ e^{(1−α)γ})`.
pub fn g(delta: f64, alpha: f64, gamma: f64) -> f64 {
    if alpha == 1.0 {
        return delta * gamma;
    }
    ((1.0 - delta) + delta * ((1.0 - alpha) * gamma).exp()).ln() / (1.0 - alpha)
}

/// `f(δ, α, γ)`: `δγ + h(δ)` at `α = 1`, else
/// `α/(α−1) · log((1−δ)^{1/α} + δ^{1/α} e^{(α−1)γ/α})`.
pub fn f(delta: f64, alpha: f64, gamma: f64) -> f64 {
    if alpha == 1.0 {
        return delta * gamma + binary_entropy(delta);
    }
    let a = (1.0 - delta).powf(1.0 / alpha);
    let b = delta.powf(1.0 / alpha) * ((alpha - 1.0) * gamma / alpha).exp();
    alpha / (alpha - 1.0) * (a + b).ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquicontinuityBound {
    pub delta: f64,
    pub eta: f64,
    pub capacity_eta: f64,
    pub bound: f64,
}

impl EquicontinuityBound {
    /// Bound on `|I^{(1)}_α(P₂) − I^{(1)}_α(P₁)|` for orders up to `η`.
    pub fn renyi(delta: f64, eta: f64, capacity_eta: f64) -> Self {
        let c = capacity_eta;
        let bound = if eta == 0.0 {
            let first = if delta >= 1.0 {
                c - delta.ln()
            } else if delta <= 0.0 {
                -(1.0 - delta).ln()
            } else {
                (-(1.0 - delta).ln()).min(c - delta.ln())
            };
            first + (1.0 - delta + delta * c.exp()).ln()
        } else if eta == 1.0 {
            binary_entropy(delta) + delta * c + (1.0 - delta + delta * c.exp()).ln()
        } else {
            f(delta, eta, c) + g(delta, 0.0, c)
        };
        Self {
            delta,
            eta,
            capacity_eta,
            bound,
        }
    }

    /// Bound `h(δ) + δ·C` on `|I^{(2)}_α(P₂) − I^{(2)}_α(P₁)|` for orders up to `η`.
    pub fn augustin(delta: f64, eta: f64, capacity_eta: f64) -> Self {
        Self {
            delta,
            eta,
            capacity_eta,
            bound: binary_entropy(delta) + delta * capacity_eta,
        }
    }
}

/// `½‖P₁ − P₂‖₁`.
pub fn total_variation(p1: &[f64], p2: &[f64]) -> f64 {
    0.5 * p1.iter().zip(p2).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn endpoints() {
        for eta in [0.0, 0.5, 1.0, 2.0] {
            assert!(EquicontinuityBound::renyi(0.0, eta, 0.7).bound.abs() < 1e-15);
            let full = EquicontinuityBound::renyi(1.0, eta, 0.7).bound;
            assert!((full - 1.4).abs() < 1e-12, "{eta}: {full}");
        }
        assert_eq!(EquicontinuityBound::augustin(0.0, 1.0, 0.7).bound, 0.0);
        assert!((EquicontinuityBound::augustin(1.0, 1.0, 0.7).bound - 0.7).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn bounds_are_nonnegative(delta in 0.0..=1.0f64, eta in 0.05..5.0f64, c in 0.0..3.0f64) {
            prop_assert!(EquicontinuityBound::renyi(delta, eta, c).bound >= -1e-12);
            prop_assert!(EquicontinuityBound::renyi(delta, 1.0, c).bound >= -1e-12);
            prop_assert!(EquicontinuityBound::renyi(delta, 0.0, c).bound >= -1e-12);
            prop_assert!(EquicontinuityBound::augustin(delta, eta, c).bound >= 0.0);
        }

        #[test]
        fn g_and_f_are_continuous_at_one(delta in 0.01..0.99f64, c in 0.0..3.0f64) {
            prop_assert!((g(delta, 1.0 + 1e-7, c) - g(delta, 1.0, c)).abs() < 1e-5);
            prop_assert!((f(delta, 1.0 + 1e-7, c) - f(delta, 1.0, c)).abs() < 1e-5);
        }

        #[test]
        fn bound_grows_with_delta(a in 0.0..=1.0f64, b in 0.0..=1.0f64, eta in 0.1..4.0f64, c in 0.0..3.0f64) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            // The Augustin modulus h(δ) + δC is not monotone past δ = 1/(1+e^{-C});
            // the Rényi one for η = 1 is tested on [0, 1/2].
            let lo = lo * 0.5;
            let hi = hi * 0.5;
            prop_assert!(EquicontinuityBound::augustin(lo, eta, c).bound <= EquicontinuityBound::augustin(hi, eta, c).bound + 1e-12);
            prop_assert!(EquicontinuityBound::renyi(lo, 1.0, c).bound <= EquicontinuityBound::renyi(hi, 1.0, c).bound + 1e-12);
        }
    }
}
