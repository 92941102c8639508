//! Quantum Rényi divergences: Petz, sandwiched and log-Euclidean.
//!
//! All values are in nats and normalized by `Tr ρ`. Traces are accumulated in
//! the log domain, so orders far from one (`α = 10³` and beyond) stay finite.
//! The order endpoints `0` and `∞` use closed forms where one is cheap
//! (Petz at 0, sandwiched at ∞); the remaining endpoints are Richardson
//! extrapolations and are flagged as limit estimates.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::channel::{CqChannel, Prepared, Prior};
use crate::error::{Error, Result};
use crate::matcalc::{
    check_dims, eig_matrix, singular_values, CMatrix, DensityOperator, HermitianOperator, Spectrum,
    RELATIVE_CUTOFF,
};

/// Below this value `Tr[Π_ρ Π_σ]` counts as zero (orthogonal supports).
pub const ORTHOGONALITY_CUTOFF: f64 = 1e-12;
/// Singular values of the eigenbasis overlap below this count as zero.
const OVERLAP_RANK_CUTOFF: f64 = 1e-8;
/// Principal angles below this (in `1 − cos θ`) count as a shared direction
/// when intersecting supports.
const INTERSECTION_TOL: f64 = 1e-9;

const RICHARDSON_LARGE: (f64, f64) = (1e3, 2e3);
const RICHARDSON_SMALL: (f64, f64) = (1e-3, 5e-4);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivergenceKind {
    Petz,
    Sandwiched,
    LogEuclidean,
}

impl DivergenceKind {
    pub const ALL: [DivergenceKind; 3] = [
        DivergenceKind::Petz,
        DivergenceKind::Sandwiched,
        DivergenceKind::LogEuclidean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DivergenceKind::Petz => "petz",
            DivergenceKind::Sandwiched => "sandwiched",
            DivergenceKind::LogEuclidean => "log-euclidean",
        }
    }
}

impl fmt::Display for DivergenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DivergenceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "petz" => Ok(DivergenceKind::Petz),
            "sandwiched" | "minimal" => Ok(DivergenceKind::Sandwiched),
            "log-euclidean" | "logeuclidean" | "flat" => Ok(DivergenceKind::LogEuclidean),
            other => Err(Error::Parse(format!("unknown divergence kind '{other}'"))),
        }
    }
}

/// A real number or `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub enum ExtendedValue {
    Finite(f64),
    PosInfinity,
}

impl ExtendedValue {
    pub fn from_f64(x: f64) -> Self {
        if x == f64::INFINITY {
            ExtendedValue::PosInfinity
        } else {
            ExtendedValue::Finite(x)
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExtendedValue::Finite(x) => x,
            ExtendedValue::PosInfinity => f64::INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedValue::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedValue::Finite(x) => Some(x),
            ExtendedValue::PosInfinity => None,
        }
    }

    /// The finite value, or an error naming the quantity.
    pub fn expect_finite(self, what: &str) -> Result<f64> {
        self.finite()
            .ok_or_else(|| Error::Numerical(format!("{what} is infinite")))
    }

    pub fn map(self, f: impl FnOnce(f64) -> f64) -> Self {
        match self {
            ExtendedValue::Finite(x) => ExtendedValue::Finite(f(x)),
            ExtendedValue::PosInfinity => ExtendedValue::PosInfinity,
        }
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(x) => write!(f, "{x}"),
            ExtendedValue::PosInfinity => f.write_str("+inf"),
        }
    }
}

impl Serialize for ExtendedValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedValue::Finite(x) => s.serialize_f64(*x),
            ExtendedValue::PosInfinity => s.serialize_str("+inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(ExtendedValue::Finite(x)),
            Raw::Str(s) if s == "+inf" || s == "inf" => Ok(ExtendedValue::PosInfinity),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad value '{s}'"))),
        }
    }
}

/// A Rényi order `α ∈ [0, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub const INFINITY: Order = Order(f64::INFINITY);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha < 0.0 {
            Err(Error::InvalidOrder(alpha))
        } else {
            Ok(Order(alpha))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

impl FromStr for Order {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "infinity" | "∞" => Ok(Order::INFINITY),
            t => {
                let a: f64 = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad order '{t}'")))?;
                Order::new(a)
            }
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// A divergence value together with how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DivergenceValue {
    pub value: ExtendedValue,
    /// Set when the value is an extrapolated order limit rather than exact.
    pub limit_estimate: bool,
}

/// `D_α^{(t)}(ρ‖σ)` for positive semidefinite `ρ ≠ 0` and `σ`.
pub fn divergence(
    kind: DivergenceKind,
    rho: &HermitianOperator,
    sigma: &HermitianOperator,
    alpha: f64,
) -> Result<ExtendedValue> {
    Ok(divergence_detailed(kind, rho, sigma, alpha)?.value)
}

pub fn divergence_detailed(
    kind: DivergenceKind,
    rho: &HermitianOperator,
    sigma: &HermitianOperator,
    alpha: f64,
) -> Result<DivergenceValue> {
    let alpha = Order::new(alpha)?.value();
    check_dims(rho, sigma)?;
    let r = Spectrum::of(rho, None)?;
    if r.rank() == 0 {
        return Err(Error::ZeroOperator);
    }
    if rho.matrix() == sigma.matrix() {
        // D(ρ‖ρ) = 0 for every family and order.
        return Ok(DivergenceValue {
            value: ExtendedValue::Finite(0.0),
            limit_estimate: false,
        });
    }
    let s = Spectrum::of(sigma, None)?;
    let tr = r.trace();
    with_endpoints(alpha, |a| single(kind, &r, &s, a, tr))
}

/// Umegaki relative entropy `Tr[ρ(log ρ − log σ)]` (not normalized).
pub fn umegaki(rho: &HermitianOperator, sigma: &HermitianOperator) -> Result<ExtendedValue> {
    check_dims(rho, sigma)?;
    let r = Spectrum::of(rho, None)?;
    let s = Spectrum::of(sigma, None)?;
    Ok(umegaki_spec(&r, &s, &r.overlap(&s)))
}

/// Divergence variance `V^{(t)}(ρ‖σ)`. Petz and sandwiched share
/// `Tr[ρ(log ρ − log σ)²] − D(ρ‖σ)²`; the log-Euclidean variance weights the
/// entries of `log ρ − log σ` in the eigenbasis of `ρ` by the logarithmic
/// mean of the eigenvalue pairs.
pub fn variance(
    kind: DivergenceKind,
    rho: &DensityOperator,
    sigma: &HermitianOperator,
) -> Result<f64> {
    check_dims(rho, sigma)?;
    let r = Spectrum::of(rho, None)?;
    let s = Spectrum::of(sigma, None)?;
    let w = r.overlap(&s);
    if !abs_continuous(&r, &s, &w) {
        return Err(Error::SupportViolation(
            "variance requires supp ρ ⊆ supp σ".into(),
        ));
    }
    let d = umegaki_spec(&r, &s, &w).expect_finite("relative entropy")?;
    // X = log ρ − log σ in the eigenbasis of ρ.
    let n = r.dim();
    let lb: Vec<f64> = s
        .logs
        .iter()
        .map(|&l| if l > f64::NEG_INFINITY { l } else { 0.0 })
        .collect();
    let mut x = CMatrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &l) in lb.iter().enumerate() {
                acc += w[(i, j)] * l * w[(k, j)].conj();
            }
            x[(i, k)] = -acc;
        }
        if r.in_support(i) {
            x[(i, i)] += r.logs[i];
        }
    }
    let a = &r.values;
    let second: f64 = match kind {
        DivergenceKind::Petz | DivergenceKind::Sandwiched => (0..n)
            .map(|i| a[i] * (0..n).map(|k| x[(i, k)].norm_sqr()).sum::<f64>())
            .sum(),
        DivergenceKind::LogEuclidean => {
            let mut acc = 0.0;
            for i in 0..n {
                for k in 0..n {
                    acc += log_mean(a[i], a[k]) * x[(i, k)].norm_sqr();
                }
            }
            acc
        }
    };
    Ok(second - d * d)
}

/// Logarithmic mean `(a − b)/(log a − log b)`, with `L(a, a) = a` and
/// `L(a, 0) = 0`.
pub fn log_mean(a: f64, b: f64) -> f64 {
    if a <= 0.0 || b <= 0.0 {
        return 0.0;
    }
    let r = b / a - 1.0;
    if r.abs() < 1e-5 {
        // a·(1 + r/2 − r²/12 + r³/24) from the series of r / log(1 + r)
        return a * (1.0 + r / 2.0 - r * r / 12.0 + r * r * r / 24.0);
    }
    (a - b) / (a.ln() - b.ln())
}

/// `D_α(W‖σ|P) = Σ_x P(x) D_α(W_x‖σ)`.
pub fn conditional_divergence(
    kind: DivergenceKind,
    prior: &Prior,
    channel: &CqChannel,
    sigma: &HermitianOperator,
    alpha: f64,
) -> Result<ExtendedValue> {
    let alpha = Order::new(alpha)?.value();
    if sigma.dim() != channel.output_dim() {
        return Err(Error::DimensionMismatch {
            expected: channel.output_dim(),
            found: sigma.dim(),
        });
    }
    let prep = Prepared::new(prior, channel)?;
    let s = Spectrum::of(sigma, None)?;
    Ok(augustin_block(kind, &prep, &s, alpha)?.value)
}

// ---------------------------------------------------------------------------
// Internals shared with the information module.

/// `log Q_α` where `Q_α` is the trace functional of the divergence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum LogQ {
    Log(f64),
    /// The trace vanishes (orthogonal supports, `α < 1`).
    Zero,
    /// Absolute continuity fails for `α > 1`.
    Infinite,
}

fn logsumexp(xs: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = xs.collect();
    let m = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m.is_infinite() {
        return m;
    }
    m + v.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

pub(crate) fn abs_continuous(r: &Spectrum, s: &Spectrum, w: &CMatrix) -> bool {
    if s.is_full_rank() {
        return true;
    }
    let kernel: Vec<usize> = (0..s.dim()).filter(|&j| !s.in_support(j)).collect();
    let supp_r = r.support();
    let k = kernel.len();
    let mut m = CMatrix::zeros(k, k);
    for (p, &j) in kernel.iter().enumerate() {
        for (q, &l) in kernel.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &i in &supp_r {
                acc += w[(i, j)].conj() * r.values[i] * w[(i, l)];
            }
            m[(p, q)] = acc;
        }
    }
    let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let leak = eig_matrix(&m)
        .eigenvalues
        .iter()
        .fold(0.0f64, |a, l| a.max(l.abs()));
    leak <= RELATIVE_CUTOFF * r.max_value()
}

fn support_overlap(r: &Spectrum, s: &Spectrum, w: &CMatrix) -> f64 {
    let mut acc = 0.0;
    for i in r.support() {
        for j in s.support() {
            acc += w[(i, j)].norm_sqr();
        }
    }
    acc
}

fn hermitian_from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> CMatrix {
    let m = CMatrix::from_fn(n, n, f);
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// `log Q_α(ρ‖σ)` for finite `α ∉ {0, 1}`, given the overlap `W = U_ρ†V_σ`.
fn log_q_with(kind: DivergenceKind, r: &Spectrum, s: &Spectrum, w: &CMatrix, alpha: f64) -> LogQ {
    if alpha > 1.0 {
        if !abs_continuous(r, s, w) {
            return LogQ::Infinite;
        }
    } else if support_overlap(r, s, w) <= ORTHOGONALITY_CUTOFF {
        return LogQ::Zero;
    }
    let supp_r = r.support();
    let supp_s = s.support();
    match kind {
        DivergenceKind::Petz => {
            // Squared overlaps below the rounding level of a unitary entry are
            // noise; at large orders they would be amplified by σ^{1−α}.
            let overlap_floor = (r.dim() as f64 * f64::EPSILON).powi(2);
            let mut terms = Vec::with_capacity(supp_r.len() * supp_s.len());
            for &i in &supp_r {
                for &j in &supp_s {
                    let c = w[(i, j)].norm_sqr();
                    if c > overlap_floor {
                        terms.push(alpha * r.logs[i] + (1.0 - alpha) * s.logs[j] + c.ln());
                    }
                }
            }
            finish(logsumexp(terms.into_iter()))
        }
        DivergenceKind::Sandwiched => {
            // Nonzero spectrum of σ^{β/2} ρ σ^{β/2} is the squared singular
            // values of G = Λ_ρ^{1/2} W diag(σ^{β/2}). The column scaling can
            // span many orders of magnitude, so one-sided Jacobi is used.
            let beta = (1.0 - alpha) / alpha;
            let shift = supp_s
                .iter()
                .map(|&j| beta * s.logs[j])
                .fold(f64::NEG_INFINITY, f64::max);
            let sb: Vec<f64> = supp_s
                .iter()
                .map(|&j| (0.5 * (beta * s.logs[j] - shift)).exp())
                .collect();
            let sq: Vec<f64> = supp_r.iter().map(|&i| r.values[i].sqrt()).collect();
            let overlap = CMatrix::from_fn(supp_r.len(), supp_s.len(), |p, t| w[(supp_r[p], supp_s[t])]);
            let rank = singular_values(&overlap)
                .iter()
                .filter(|&&v| v > OVERLAP_RANK_CUTOFF)
                .count();
            let g = CMatrix::from_fn(supp_r.len(), supp_s.len(), |p, t| overlap[(p, t)] * (sq[p] * sb[t]));
            let sv = singular_values(&g);
            let l = logsumexp(
                sv.iter()
                    .take(rank)
                    .filter(|&&v| v > 0.0)
                    .map(|v| 2.0 * alpha * v.ln()),
            );
            if l == f64::NEG_INFINITY {
                return LogQ::Zero;
            }
            finish(alpha * shift + l)
        }
        DivergenceKind::LogEuclidean => {
            let h = log_euclidean_exponent(r, s, w, alpha);
            match h {
                None => LogQ::Zero,
                Some(h) => finish(logsumexp(eig_matrix(&h).eigenvalues.into_iter())),
            }
        }
    }
}

fn finish(l: f64) -> LogQ {
    if l == f64::NEG_INFINITY {
        LogQ::Zero
    } else {
        LogQ::Log(l)
    }
}

/// `V†(α log ρ + (1−α) log σ)V` with `V` an orthonormal basis of
/// `supp ρ ∩ supp σ`; `None` when the intersection is trivial.
fn log_euclidean_exponent(r: &Spectrum, s: &Spectrum, w: &CMatrix, alpha: f64) -> Option<CMatrix> {
    let supp_r = r.support();
    let supp_s = s.support();
    if s.is_full_rank() {
        // Work in the eigenbasis of ρ restricted to its support.
        let n = supp_r.len();
        return Some(hermitian_from_fn(n, |p, q| {
            let (i, k) = (supp_r[p], supp_r[q]);
            let mut acc = Complex64::new(0.0, 0.0);
            for &j in &supp_s {
                acc += w[(i, j)] * s.logs[j] * w[(k, j)].conj();
            }
            let mut v = acc * (1.0 - alpha);
            if p == q {
                v += alpha * r.logs[i];
            }
            v
        }));
    }
    if r.is_full_rank() {
        let n = supp_s.len();
        return Some(hermitian_from_fn(n, |p, q| {
            let (j, l) = (supp_s[p], supp_s[q]);
            let mut acc = Complex64::new(0.0, 0.0);
            for &i in &supp_r {
                acc += w[(i, j)].conj() * r.logs[i] * w[(i, l)];
            }
            let mut v = acc * alpha;
            if p == q {
                v += (1.0 - alpha) * s.logs[j];
            }
            v
        }));
    }
    let sum = r.projector() + s.projector();
    let sd = eig_matrix(&sum);
    let cols: Vec<usize> = (0..sd.eigenvalues.len())
        .filter(|&c| sd.eigenvalues[c] >= 2.0 - INTERSECTION_TOL)
        .collect();
    if cols.is_empty() {
        return None;
    }
    let v = CMatrix::from_fn(r.dim(), cols.len(), |i, c| sd.eigenvectors[(i, cols[c])]);
    let l = r.log_matrix() * Complex64::new(alpha, 0.0)
        + s.log_matrix() * Complex64::new(1.0 - alpha, 0.0);
    let h = v.adjoint() * l * &v;
    Some((&h + h.adjoint()) * Complex64::new(0.5, 0.0))
}

pub(crate) fn umegaki_spec(r: &Spectrum, s: &Spectrum, w: &CMatrix) -> ExtendedValue {
    if !abs_continuous(r, s, w) {
        return ExtendedValue::PosInfinity;
    }
    let mut acc = 0.0;
    for i in r.support() {
        let a = r.values[i];
        let mut cross = 0.0;
        for j in s.support() {
            cross += w[(i, j)].norm_sqr() * s.logs[j];
        }
        acc += a * (r.logs[i] - cross);
    }
    ExtendedValue::Finite(acc)
}

/// `Tr[Π_ρ σ]`.
fn support_weight(r: &Spectrum, s: &Spectrum, w: &CMatrix) -> f64 {
    let mut acc = 0.0;
    for i in r.support() {
        for j in s.support() {
            acc += s.values[j] * w[(i, j)].norm_sqr();
        }
    }
    acc
}

/// `log ‖σ^{-1/2} ρ σ^{-1/2}‖_∞`, assuming `ρ ≪ σ`.
fn log_max_ratio(r: &Spectrum, s: &Spectrum, w: &CMatrix) -> f64 {
    if !abs_continuous(r, s, w) {
        f64::INFINITY
    } else {
        {
            // β = −1 sandwich, largest eigenvalue.
            let supp_r = r.support();
            let supp_s = s.support();
            let shift = supp_s
                .iter()
                .map(|&j| -s.logs[j])
                .fold(f64::NEG_INFINITY, f64::max);
            let n = supp_r.len();
            let m = hermitian_from_fn(n, |p, q| {
                let (i, k) = (supp_r[p], supp_r[q]);
                let mut acc = Complex64::new(0.0, 0.0);
                for &j in &supp_s {
                    acc += w[(i, j)] * (-s.logs[j] - shift).exp() * w[(k, j)].conj();
                }
                acc * (r.values[i] * r.values[k]).sqrt()
            });
            let top = eig_matrix(&m).max_eigenvalue();
            top.ln() + shift
        }
    }
}

fn single(
    kind: DivergenceKind,
    r: &Spectrum,
    s: &Spectrum,
    alpha: f64,
    tr: f64,
) -> Result<Endpoint> {
    let w = r.overlap(s);
    if alpha == 1.0 {
        return Ok(Endpoint::Value(umegaki_spec(r, s, &w).map(|d| d / tr)));
    }
    if alpha == 0.0 {
        if kind == DivergenceKind::Petz {
            let t = support_weight(r, s, &w);
            return Ok(Endpoint::Value(
                if support_overlap(r, s, &w) <= ORTHOGONALITY_CUTOFF || t <= 1e-300 {
                    ExtendedValue::PosInfinity
                } else {
                    ExtendedValue::Finite(-(t / tr).ln())
                },
            ));
        }
        return Ok(Endpoint::Extrapolate);
    }
    if alpha.is_infinite() {
        if kind == DivergenceKind::Sandwiched {
            return Ok(Endpoint::Value(ExtendedValue::from_f64(log_max_ratio(
                r, s, &w,
            ))));
        }
        return Ok(Endpoint::Extrapolate);
    }
    Ok(Endpoint::Value(from_log_q(
        log_q_with(kind, r, s, &w, alpha),
        tr.ln(),
        alpha,
    )?))
}

pub(crate) fn from_log_q(q: LogQ, log_trace: f64, alpha: f64) -> Result<ExtendedValue> {
    match q {
        LogQ::Infinite => Ok(ExtendedValue::PosInfinity),
        LogQ::Zero if alpha < 1.0 => Ok(ExtendedValue::PosInfinity),
        LogQ::Zero => Err(Error::Numerical(
            "vanishing trace for an order above one".into(),
        )),
        LogQ::Log(l) => Ok(ExtendedValue::Finite((l - log_trace) / (alpha - 1.0))),
    }
}

pub(crate) enum Endpoint {
    Value(ExtendedValue),
    Extrapolate,
}

/// Evaluates `f` at `alpha`, extrapolating to the endpoints when `f` has no
/// closed form there.
pub(crate) fn with_endpoints(
    alpha: f64,
    f: impl Fn(f64) -> Result<Endpoint>,
) -> Result<DivergenceValue> {
    match f(alpha)? {
        Endpoint::Value(value) => Ok(DivergenceValue {
            value,
            limit_estimate: false,
        }),
        Endpoint::Extrapolate => {
            let (a1, a2) = if alpha == 0.0 {
                RICHARDSON_SMALL
            } else {
                RICHARDSON_LARGE
            };
            let v1 = value_of(f(a1)?)?;
            let v2 = value_of(f(a2)?)?;
            let value = match (v1, v2) {
                (ExtendedValue::Finite(x), ExtendedValue::Finite(y)) => {
                    ExtendedValue::Finite(2.0 * y - x)
                }
                _ => ExtendedValue::PosInfinity,
            };
            Ok(DivergenceValue {
                value,
                limit_estimate: true,
            })
        }
    }
}

fn value_of(e: Endpoint) -> Result<ExtendedValue> {
    match e {
        Endpoint::Value(v) => Ok(v),
        Endpoint::Extrapolate => Err(Error::Numerical("nested extrapolation".into())),
    }
}

/// How the classical register enters a block-diagonal divergence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum BlockWeights {
    /// `D_α(P∘W ‖ P⊗σ)`: each block carries `P(x)` on both sides.
    Product,
    /// `D_α(ρ_XB ‖ 𝟙⊗σ)`: blocks `P(x)ρ_x` against `σ`.
    Conditional,
}

/// Block-diagonal Rényi divergence `D_α(Σ P(x)|x⟩⟨x|⊗W_x ‖ Σ c(x)|x⟩⟨x|⊗σ)`
/// computed from the per-block trace functionals.
pub(crate) fn renyi_block(
    kind: DivergenceKind,
    prep: &Prepared,
    s: &Spectrum,
    alpha: f64,
    weights: BlockWeights,
) -> Result<DivergenceValue> {
    let overlaps: Vec<CMatrix> = prep.spectra.iter().map(|r| r.overlap(s)).collect();
    let cond = weights == BlockWeights::Conditional;
    let entropy_shift = if cond {
        prep.weights.iter().map(|&p| p * p.ln()).sum::<f64>()
    } else {
        0.0
    };
    with_endpoints(alpha, |a| {
        if a == 1.0 {
            let mut acc = 0.0;
            for ((r, w), &p) in prep.spectra.iter().zip(&overlaps).zip(&prep.weights) {
                match umegaki_spec(r, s, w) {
                    ExtendedValue::Finite(d) => acc += p * d,
                    ExtendedValue::PosInfinity => {
                        return Ok(Endpoint::Value(ExtendedValue::PosInfinity))
                    }
                }
            }
            return Ok(Endpoint::Value(ExtendedValue::Finite(acc + entropy_shift)));
        }
        if a == 0.0 {
            if kind != DivergenceKind::Petz {
                return Ok(Endpoint::Extrapolate);
            }
            let mut t = 0.0;
            let mut overlap = 0.0;
            for ((r, w), &p) in prep.spectra.iter().zip(&overlaps).zip(&prep.weights) {
                let c = if cond { 1.0 } else { p };
                t += c * support_weight(r, s, w);
                overlap += support_overlap(r, s, w);
            }
            let v = if overlap <= ORTHOGONALITY_CUTOFF || t <= 1e-300 {
                ExtendedValue::PosInfinity
            } else {
                ExtendedValue::Finite(-t.ln())
            };
            return Ok(Endpoint::Value(v));
        }
        if a.is_infinite() {
            if kind != DivergenceKind::Sandwiched {
                return Ok(Endpoint::Extrapolate);
            }
            let mut best = f64::NEG_INFINITY;
            for ((r, w), &p) in prep.spectra.iter().zip(&overlaps).zip(&prep.weights) {
                let shift = if cond { p.ln() } else { 0.0 };
                best = best.max(log_max_ratio(r, s, w) + shift);
            }
            return Ok(Endpoint::Value(ExtendedValue::from_f64(best)));
        }
        let mut terms = Vec::with_capacity(prep.weights.len());
        for ((r, w), &p) in prep.spectra.iter().zip(&overlaps).zip(&prep.weights) {
            let lw = if cond { a * p.ln() } else { p.ln() };
            match log_q_with(kind, r, s, w, a) {
                LogQ::Infinite => return Ok(Endpoint::Value(ExtendedValue::PosInfinity)),
                LogQ::Zero => {}
                LogQ::Log(l) => terms.push(lw + l),
            }
        }
        let l = if terms.is_empty() {
            LogQ::Zero
        } else {
            LogQ::Log(logsumexp(terms.into_iter()))
        };
        Ok(Endpoint::Value(from_log_q(l, 0.0, a)?))
    })
}

/// `Σ_x P(x) D_α(W_x‖σ)`.
pub(crate) fn augustin_block(
    kind: DivergenceKind,
    prep: &Prepared,
    s: &Spectrum,
    alpha: f64,
) -> Result<DivergenceValue> {
    let overlaps: Vec<CMatrix> = prep.spectra.iter().map(|r| r.overlap(s)).collect();
    with_endpoints(alpha, |a| {
        let mut acc = 0.0;
        for ((r, w), &p) in prep.spectra.iter().zip(&overlaps).zip(&prep.weights) {
            let v = match single_with(kind, r, s, w, a)? {
                Endpoint::Extrapolate => return Ok(Endpoint::Extrapolate),
                Endpoint::Value(v) => v,
            };
            match v {
                ExtendedValue::Finite(d) => acc += p * d,
                ExtendedValue::PosInfinity => return Ok(Endpoint::Value(v)),
            }
        }
        Ok(Endpoint::Value(ExtendedValue::Finite(acc)))
    })
}

fn single_with(
    kind: DivergenceKind,
    r: &Spectrum,
    s: &Spectrum,
    w: &CMatrix,
    alpha: f64,
) -> Result<Endpoint> {
    if alpha == 1.0 {
        return Ok(Endpoint::Value(umegaki_spec(r, s, w)));
    }
    if alpha == 0.0 || alpha.is_infinite() {
        return single(kind, r, s, alpha, r.trace());
    }
    Ok(Endpoint::Value(from_log_q(
        log_q_with(kind, r, s, w, alpha),
        r.trace().ln(),
        alpha,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcalc::{mlog, mpow, random_density, tensor};

    fn diag(v: &[f64]) -> HermitianOperator {
        HermitianOperator::from_real_diagonal(v)
    }

    fn classical(p: &[f64], q: &[f64], a: f64) -> f64 {
        if a == 1.0 {
            return p.iter().zip(q).map(|(x, y)| x * (x / y).ln()).sum();
        }
        let s: f64 = p
            .iter()
            .zip(q)
            .map(|(x, y)| x.powf(a) * y.powf(1.0 - a))
            .sum();
        s.ln() / (a - 1.0)
    }

    #[test]
    fn commuting_case_matches_classical() {
        let p = [0.7, 0.2, 0.1];
        let q = [0.3, 0.3, 0.4];
        for kind in DivergenceKind::ALL {
            for &a in &[0.3, 0.5, 1.0, 1.5, 4.0] {
                let d = divergence(kind, &diag(&p), &diag(&q), a).unwrap();
                let want = classical(&p, &q, a);
                assert!((d.to_f64() - want).abs() < 1e-13, "{kind} {a}");
            }
        }
    }

    #[test]
    fn pure_states_half_order() {
        // For pure states with overlap c = |⟨ψ|φ⟩|², Petz gives −2 log c and
        // sandwiched gives −log c at α = 1/2.
        let psi = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let phi = [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        let a = DensityOperator::pure(&psi).unwrap();
        let b = DensityOperator::pure(&phi).unwrap();
        let petz = divergence(DivergenceKind::Petz, &a, &b, 0.5)
            .unwrap()
            .to_f64();
        assert!((petz - 2.0 * 2f64.ln()).abs() < 1e-12, "{petz}");
        let sw = divergence(DivergenceKind::Sandwiched, &a, &b, 0.5)
            .unwrap()
            .to_f64();
        assert!((sw - 2f64.ln()).abs() < 1e-12, "{sw}");
        // Distinct pure states have trivial support intersection.
        let le = divergence(DivergenceKind::LogEuclidean, &a, &b, 0.5).unwrap();
        assert_eq!(le, ExtendedValue::PosInfinity);
    }

    #[test]
    fn support_violation_gives_infinity() {
        let rho = diag(&[0.5, 0.5]);
        let sigma = diag(&[1.0, 0.0]);
        for kind in DivergenceKind::ALL {
            for &a in &[1.0, 2.0, f64::INFINITY] {
                assert_eq!(
                    divergence(kind, &rho, &sigma, a).unwrap(),
                    ExtendedValue::PosInfinity
                );
            }
            // below one the value stays finite
            assert!(divergence(kind, &rho, &sigma, 0.5).unwrap().is_finite());
        }
    }

    #[test]
    fn orthogonal_states() {
        let rho = diag(&[1.0, 0.0]);
        let sigma = diag(&[0.0, 1.0]);
        for kind in DivergenceKind::ALL {
            assert_eq!(
                divergence(kind, &rho, &sigma, 0.5).unwrap(),
                ExtendedValue::PosInfinity
            );
        }
    }

    #[test]
    fn petz_matches_matrix_powers() {
        let rho = random_density(3, 3, 1).unwrap();
        let sigma = random_density(3, 2, 2).unwrap();
        let a = 0.7;
        let q = mpow(&rho, a, None).unwrap().matrix().clone()
            * mpow(&sigma, 1.0 - a, None).unwrap().matrix();
        let want = q.trace().re.ln() / (a - 1.0);
        let got = divergence(DivergenceKind::Petz, &rho, &sigma, a)
            .unwrap()
            .to_f64();
        assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn sandwiched_matches_matrix_powers() {
        let rho = random_density(3, 2, 3).unwrap();
        let sigma = random_density(3, 3, 4).unwrap();
        for &a in &[0.6, 2.5] {
            let g = mpow(&sigma, (1.0 - a) / (2.0 * a), None).unwrap();
            let m = g.sandwich(&rho);
            let want = mpow(&m, a, None).unwrap().trace().ln() / (a - 1.0);
            let got = divergence(DivergenceKind::Sandwiched, &rho, &sigma, a)
                .unwrap()
                .to_f64();
            assert!((got - want).abs() < 1e-11, "{a}: {got} vs {want}");
        }
    }

    #[test]
    fn log_euclidean_matches_matrix_exponential() {
        let rho = random_density(3, 3, 5).unwrap();
        let sigma = random_density(3, 3, 6).unwrap();
        let a = 1.7;
        let h = &mlog(&rho, None).unwrap().scale(a) + &mlog(&sigma, None).unwrap().scale(1.0 - a);
        let want = crate::matcalc::mexp(&h).trace().ln() / (a - 1.0);
        let got = divergence(DivergenceKind::LogEuclidean, &rho, &sigma, a)
            .unwrap()
            .to_f64();
        assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn order_one_is_umegaki_and_continuous() {
        let rho = random_density(3, 3, 7).unwrap();
        let sigma = random_density(3, 3, 8).unwrap();
        let d1 = umegaki(&rho, &sigma).unwrap().to_f64();
        for kind in DivergenceKind::ALL {
            let near = divergence(kind, &rho, &sigma, 1.0 + 1e-6).unwrap().to_f64();
            assert!((near - d1).abs() < 1e-5, "{kind}");
        }
    }

    #[test]
    fn large_orders_stay_finite() {
        let rho = random_density(2, 2, 9).unwrap();
        let sigma = random_density(2, 2, 10).unwrap();
        for kind in DivergenceKind::ALL {
            let d = divergence(kind, &rho, &sigma, 1e3).unwrap();
            assert!(d.to_f64().is_finite(), "{kind}");
        }
        let dmax = divergence(DivergenceKind::Sandwiched, &rho, &sigma, f64::INFINITY).unwrap();
        let d1000 = divergence(DivergenceKind::Sandwiched, &rho, &sigma, 1e3).unwrap();
        assert!((dmax.to_f64() - d1000.to_f64()).abs() < 1e-2);
        let est = divergence_detailed(DivergenceKind::Petz, &rho, &sigma, f64::INFINITY).unwrap();
        assert!(est.limit_estimate);
    }

    #[test]
    fn petz_order_zero_closed_form() {
        let rho = diag(&[1.0, 0.0]);
        let sigma = diag(&[0.25, 0.75]);
        let d = divergence(DivergenceKind::Petz, &rho, &sigma, 0.0).unwrap();
        assert!((d.to_f64() + 0.25f64.ln()).abs() < 1e-15);
        let det = divergence_detailed(DivergenceKind::Petz, &rho, &sigma, 0.0).unwrap();
        assert!(!det.limit_estimate);
    }

    #[test]
    fn additivity_under_tensor_products() {
        let r1 = random_density(2, 2, 11).unwrap();
        let s1 = random_density(2, 2, 12).unwrap();
        let r2 = random_density(2, 1, 13).unwrap();
        let s2 = random_density(2, 2, 14).unwrap();
        for kind in DivergenceKind::ALL {
            let a = 1.3;
            let lhs = divergence(kind, &tensor(&r1, &r2), &tensor(&s1, &s2), a).unwrap();
            let rhs = divergence(kind, &r1, &s1, a).unwrap().to_f64()
                + divergence(kind, &r2, &s2, a).unwrap().to_f64();
            assert!((lhs.to_f64() - rhs).abs() < 1e-11, "{kind}");
        }
    }

    #[test]
    fn variance_of_commuting_pair() {
        let p: [f64; 2] = [0.6, 0.4];
        let q: [f64; 2] = [0.2, 0.8];
        let d: f64 = p.iter().zip(&q).map(|(x, y)| x * (x / y).ln()).sum();
        let second: f64 = p
            .iter()
            .zip(&q)
            .map(|(x, y)| x * (x / y).ln().powi(2))
            .sum();
        for kind in DivergenceKind::ALL {
            let v = variance(kind, &DensityOperator::diagonal(&p).unwrap(), &diag(&q)).unwrap();
            assert!((v - (second - d * d)).abs() < 1e-14, "{kind}");
        }
    }

    #[test]
    fn variance_is_half_second_derivative() {
        // d/dα D_α at α = 1 equals V/2 for every kind.
        let rho = random_density(3, 3, 15).unwrap();
        let sigma = random_density(3, 3, 16).unwrap();
        let h = 1e-4;
        for kind in DivergenceKind::ALL {
            let up = divergence(kind, &rho, &sigma, 1.0 + h).unwrap().to_f64();
            let dn = divergence(kind, &rho, &sigma, 1.0 - h).unwrap().to_f64();
            let slope = (up - dn) / (2.0 * h);
            let v = variance(kind, &rho, &sigma).unwrap();
            assert!(
                (slope - v / 2.0).abs() < 1e-6,
                "{kind}: {slope} vs {}",
                v / 2.0
            );
        }
    }

    #[test]
    fn log_mean_limits() {
        assert_eq!(log_mean(0.3, 0.0), 0.0);
        assert!((log_mean(0.3, 0.3) - 0.3).abs() < 1e-16);
        assert!((log_mean(0.3, 0.3 * (1.0 + 1e-7)) - 0.3 * (1.0 + 0.5e-7)).abs() < 1e-15);
        assert!((log_mean(1.0, std::f64::consts::E) - (std::f64::consts::E - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn extended_value_json() {
        let v = serde_json::to_string(&ExtendedValue::PosInfinity).unwrap();
        assert_eq!(v, "\"+inf\"");
        let back: ExtendedValue = serde_json::from_str(&v).unwrap();
        assert_eq!(back, ExtendedValue::PosInfinity);
        let f: ExtendedValue = serde_json::from_str("0.25").unwrap();
        assert_eq!(f, ExtendedValue::Finite(0.25));
    }

    #[test]
    fn order_parsing() {
        assert!("inf".parse::<Order>().unwrap().is_infinite());
        assert_eq!("0.5".parse::<Order>().unwrap().value(), 0.5);
        assert!("-1".parse::<Order>().is_err());
    }
}
