//! Hermitian matrix functional calculus.
//!
//! Operators are stored as dense complex matrices. Every matrix function is
//! evaluated through an eigendecomposition; eigenvalues at or below a cutoff
//! are treated as exact zeros, so powers and logarithms act as pseudo-functions
//! on the support.

mod jacobi;
mod random;
mod spectrum;

pub use random::{
    random_density, random_density_with, random_prior, random_prior_with, random_psd_with,
};
pub(crate) use jacobi::singular_values;
pub(crate) use spectrum::Spectrum;

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Maximum entrywise deviation from Hermiticity accepted on construction.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Most negative eigenvalue accepted for a density operator.
pub const DENSITY_EIGEN_TOL: f64 = 1e-10;
/// Accepted deviation of a density operator's trace from one.
pub const DENSITY_TRACE_TOL: f64 = 1e-10;
/// Relative spectral cutoff (times the largest eigenvalue magnitude).
pub const RELATIVE_CUTOFF: f64 = 1e-12;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A Hermitian matrix. The stored matrix is exactly Hermitian.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    m: CMatrix,
}

impl HermitianOperator {
    /// Validates Hermiticity within [`HERMITIAN_TOL`] and symmetrizes.
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::InvalidParameter("empty matrix".into()));
        }
        let dev = hermitian_deviation(&m);
        if dev > HERMITIAN_TOL || dev.is_nan() {
            return Err(Error::NonHermitian(dev));
        }
        Ok(Self::symmetrized(m))
    }

    /// Builds an operator from a matrix known to be Hermitian up to rounding.
    pub(crate) fn symmetrized(m: CMatrix) -> Self {
        let adj = m.adjoint();
        Self {
            m: (m + adj) * c(0.5),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = c(d);
        }
        Self { m }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            m: CMatrix::identity(dim, dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            m: CMatrix::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            m: &self.m * c(factor),
        }
    }

    /// `self · x · self`, which is Hermitian when `x` is.
    pub fn sandwich(&self, x: &HermitianOperator) -> HermitianOperator {
        Self::symmetrized(&self.m * &x.m * &self.m)
    }

    /// Real part of `Tr[self · other]`.
    pub fn trace_product(&self, other: &HermitianOperator) -> f64 {
        self.m
            .zip_fold(&other.m.transpose(), 0.0, |acc, a, b| acc + (a * b).re)
    }

    pub fn max_abs_diff(&self, other: &HermitianOperator) -> f64 {
        self.m
            .zip_fold(&other.m, 0.0, |acc, a, b| acc.max((a - b).norm()))
    }

    fn check_same_dim(&self, other: &HermitianOperator) {
        assert_eq!(self.dim(), other.dim(), "operator dimensions differ");
    }
}

impl Add for &HermitianOperator {
    type Output = HermitianOperator;
    fn add(self, rhs: &HermitianOperator) -> HermitianOperator {
        self.check_same_dim(rhs);
        HermitianOperator {
            m: &self.m + &rhs.m,
        }
    }
}

impl Sub for &HermitianOperator {
    type Output = HermitianOperator;
    fn sub(self, rhs: &HermitianOperator) -> HermitianOperator {
        self.check_same_dim(rhs);
        HermitianOperator {
            m: &self.m - &rhs.m,
        }
    }
}

impl Mul<f64> for &HermitianOperator {
    type Output = HermitianOperator;
    fn mul(self, rhs: f64) -> HermitianOperator {
        self.scale(rhs)
    }
}

fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// A positive semidefinite operator of unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    op: HermitianOperator,
}

impl DensityOperator {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let tr = op.trace();
        if (tr - 1.0).abs() > DENSITY_TRACE_TOL || !tr.is_finite() {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let min = eig(&op).eigenvalues[0];
        if min < -DENSITY_EIGEN_TOL {
            return Err(Error::NegativeSpectrum(min));
        }
        Ok(Self { op })
    }

    /// Validates a raw matrix, including the imaginary part of its trace.
    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        if m.is_square() {
            let im: f64 = m.diagonal().iter().map(|z| z.im).sum();
            if im.abs() > 1e-12 {
                return Err(Error::InvalidDensity(format!(
                    "trace has imaginary part {im:e}"
                )));
            }
        }
        Self::new(HermitianOperator::new(m)?)
    }

    /// Normalizes a positive semidefinite operator to unit trace.
    pub fn normalized(op: HermitianOperator) -> Result<Self> {
        let tr = op.trace();
        if !(tr > 0.0) || !tr.is_finite() {
            return Err(Error::ZeroOperator);
        }
        Self::new(op.scale(1.0 / tr))
    }

    /// Wraps an operator known to be a state up to rounding; renormalizes.
    pub(crate) fn trusted(op: HermitianOperator) -> Self {
        let tr = op.trace();
        Self {
            op: op.scale(1.0 / tr),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            op: HermitianOperator::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::from_real_diagonal(probs))
    }

    /// Pure state `|ψ⟩⟨ψ|` for a (not necessarily normalized) vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if !(norm2 > 0.0) {
            return Err(Error::ZeroOperator);
        }
        let n = psi.len();
        let m = CMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj() / norm2);
        Ok(Self::trusted(HermitianOperator::symmetrized(m)))
    }

    /// Qubit state `(𝟙 + r·σ)/2` for a Bloch vector with `|r| ≤ 1`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let n2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
        if n2 > 1.0 + 1e-12 {
            return Err(Error::InvalidDensity(format!(
                "Bloch vector norm {} exceeds 1",
                n2.sqrt()
            )));
        }
        Ok(Self {
            op: bloch_operator(r),
        })
    }

    pub fn as_operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn into_operator(self) -> HermitianOperator {
        self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        self.op.matrix()
    }

    /// Convex combination `(1 − t)·self + t·other`.
    pub fn mix(&self, other: &DensityOperator, t: f64) -> DensityOperator {
        Self::trusted(&self.op.scale(1.0 - t) + &other.op.scale(t))
    }
}

impl std::ops::Deref for DensityOperator {
    type Target = HermitianOperator;
    fn deref(&self) -> &HermitianOperator {
        &self.op
    }
}

pub(crate) fn bloch_operator(r: [f64; 3]) -> HermitianOperator {
    let m = CMatrix::from_row_slice(
        2,
        2,
        &[
            c(0.5 * (1.0 + r[2])),
            Complex64::new(0.5 * r[0], -0.5 * r[1]),
            Complex64::new(0.5 * r[0], 0.5 * r[1]),
            c(0.5 * (1.0 - r[2])),
        ],
    );
    HermitianOperator { m }
}

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    /// `U f(Λ) U†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> HermitianOperator {
        let vals: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        HermitianOperator::symmetrized(assemble(&self.eigenvectors, &vals))
    }

    pub fn reconstruct(&self) -> HermitianOperator {
        self.map(|l| l)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `1e-12 · max |λ|`.
    pub fn default_cutoff(&self) -> f64 {
        let scale = self
            .eigenvalues
            .iter()
            .fold(0.0f64, |acc, l| acc.max(l.abs()));
        RELATIVE_CUTOFF * scale
    }

    fn resolve_cutoff(&self, cutoff: Option<f64>) -> f64 {
        cutoff.unwrap_or_else(|| self.default_cutoff())
    }

    fn check_psd(&self, cut: f64) -> Result<()> {
        let min = self.min_eigenvalue();
        if min < -cut.max(0.0) {
            Err(Error::NegativeSpectrum(min))
        } else {
            Ok(())
        }
    }
}

/// `V diag(vals) V†`.
pub(crate) fn assemble(vectors: &CMatrix, vals: &[f64]) -> CMatrix {
    let mut scaled = vectors.clone();
    for (j, &v) in vals.iter().enumerate() {
        scaled.column_mut(j).scale_mut(v);
    }
    scaled * vectors.adjoint()
}

pub fn eig(h: &HermitianOperator) -> SpectralDecomposition {
    eig_matrix(h.matrix())
}

pub(crate) fn eig_matrix(m: &CMatrix) -> SpectralDecomposition {
    let n = m.nrows();
    if n == 2 {
        return eig_2x2(m);
    }
    let se = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |r, col| se.eigenvectors[(r, order[col])]);
    SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// Closed-form decomposition of a 2×2 Hermitian matrix written as
/// `μ𝟙 + x σ_x + y σ_y + z σ_z`.
fn eig_2x2(m: &CMatrix) -> SpectralDecomposition {
    let (a, d) = (m[(0, 0)].re, m[(1, 1)].re);
    let b = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
    let mu = 0.5 * (a + d);
    let z = 0.5 * (a - d);
    let rad = z.hypot(b.norm());
    if rad == 0.0 {
        return SpectralDecomposition {
            eigenvalues: vec![mu, mu],
            eigenvectors: CMatrix::identity(2, 2),
        };
    }
    let theta = b.norm().atan2(z);
    let phase = if b.norm() > 0.0 { b.conj() / b.norm() } else { c(1.0) };
    let (co, si) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let eigenvectors =
        CMatrix::from_row_slice(2, 2, &[-phase.conj() * si, c(co), c(co), phase * si]);
    SpectralDecomposition {
        eigenvalues: vec![mu - rad, mu + rad],
        eigenvectors,
    }
}

/// Pseudo-power of a positive semidefinite operator. Eigenvalues at or below
/// the cutoff map to zero, for every real `p`.
pub fn mpow(a: &HermitianOperator, p: f64, cutoff: Option<f64>) -> Result<HermitianOperator> {
    let sd = eig(a);
    let cut = sd.resolve_cutoff(cutoff);
    sd.check_psd(cut)?;
    Ok(sd.map(|l| if l > cut { l.powf(p) } else { 0.0 }))
}

/// Pseudo-logarithm: `log` on the support, zero on the kernel.
pub fn mlog(a: &HermitianOperator, cutoff: Option<f64>) -> Result<HermitianOperator> {
    let sd = eig(a);
    let cut = sd.resolve_cutoff(cutoff);
    sd.check_psd(cut)?;
    Ok(sd.map(|l| if l > cut { l.ln() } else { 0.0 }))
}

pub fn mexp(h: &HermitianOperator) -> HermitianOperator {
    eig(h).map(f64::exp)
}

/// Projector onto the span of eigenvectors with eigenvalue above the cutoff.
pub fn support_proj(a: &HermitianOperator, cutoff: Option<f64>) -> Result<HermitianOperator> {
    let sd = eig(a);
    let cut = sd.resolve_cutoff(cutoff);
    sd.check_psd(cut)?;
    Ok(sd.map(|l| if l > cut { 1.0 } else { 0.0 }))
}

/// Whether `supp ρ ⊆ supp σ`, i.e. the part of `ρ` outside the support of
/// `σ` has operator norm at most the cutoff. Without an explicit cutoff the
/// support of `σ` uses its own relative cutoff and the leakage is compared
/// against `1e-12 · ‖ρ‖∞`.
pub fn absolutely_continuous(
    rho: &HermitianOperator,
    sigma: &HermitianOperator,
    cutoff: Option<f64>,
) -> Result<bool> {
    check_dims(rho, sigma)?;
    let s = Spectrum::of(sigma, cutoff)?;
    let r = Spectrum::of(rho, cutoff)?;
    let leak_cut = cutoff.unwrap_or(RELATIVE_CUTOFF * r.max_value());
    Ok(s.leakage(rho) <= leak_cut)
}

pub(crate) fn check_dims(a: &HermitianOperator, b: &HermitianOperator) -> Result<()> {
    if a.dim() != b.dim() {
        Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        })
    } else {
        Ok(())
    }
}

/// Schatten p-norm `(Σ |λ|^p)^{1/p}`; `p = ∞` gives the operator norm.
pub fn schatten_norm(a: &HermitianOperator, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!("Schatten index {p} < 1")));
    }
    let sd = eig(a);
    if p.is_infinite() {
        return Ok(sd.eigenvalues.iter().fold(0.0, |acc, l| acc.max(l.abs())));
    }
    let s: f64 = sd.eigenvalues.iter().map(|l| l.abs().powf(p)).sum();
    Ok(s.powf(1.0 / p))
}

/// `½‖a − b‖₁`.
pub fn trace_distance(a: &HermitianOperator, b: &HermitianOperator) -> f64 {
    let d = a - b;
    0.5 * eig(&d).eigenvalues.iter().map(|l| l.abs()).sum::<f64>()
}

/// Kronecker product `a ⊗ b`; index `i·d_b + j` addresses `|i⟩ ⊗ |j⟩`.
pub fn tensor(a: &HermitianOperator, b: &HermitianOperator) -> HermitianOperator {
    HermitianOperator {
        m: a.m.kronecker(&b.m),
    }
}

/// `Tr_A` of an operator on `H_A ⊗ H_B`.
pub fn partial_trace_first(
    a: &HermitianOperator,
    dim_a: usize,
    dim_b: usize,
) -> Result<HermitianOperator> {
    if dim_a * dim_b != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: dim_a * dim_b,
            found: a.dim(),
        });
    }
    let m = CMatrix::from_fn(dim_b, dim_b, |i, j| {
        (0..dim_a)
            .map(|k| a.m[(k * dim_b + i, k * dim_b + j)])
            .sum()
    });
    Ok(HermitianOperator { m })
}

/// Block-diagonal operator from a list of blocks.
pub fn direct_sum(blocks: &[HermitianOperator]) -> HermitianOperator {
    let n: usize = blocks.iter().map(|b| b.dim()).sum();
    let mut m = CMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        let d = b.dim();
        m.view_mut((off, off), (d, d)).copy_from(&b.m);
        off += d;
    }
    HermitianOperator { m }
}

/// A trace-preserving conditional expectation onto a subalgebra.
#[derive(Clone, Debug, PartialEq)]
pub enum PinchingMap {
    /// Keeps the diagonal blocks indexed by a partition of the basis.
    Blocks { dim: usize, blocks: Vec<Vec<usize>> },
    /// `X ↦ (𝟙_A / d_A) ⊗ Tr_A X` on `H_A ⊗ H_B`.
    Factor { dim_a: usize, dim_b: usize },
}

impl PinchingMap {
    pub fn blocks(dim: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; dim];
        for &i in blocks.iter().flatten() {
            if i >= dim || seen[i] {
                return Err(Error::InvalidParameter(format!(
                    "blocks do not partition 0..{dim}"
                )));
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidParameter(format!(
                "blocks do not partition 0..{dim}"
            )));
        }
        Ok(PinchingMap::Blocks { dim, blocks })
    }

    pub fn factor(dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::InvalidParameter("empty tensor factor".into()));
        }
        Ok(PinchingMap::Factor { dim_a, dim_b })
    }

    pub fn dim(&self) -> usize {
        match self {
            PinchingMap::Blocks { dim, .. } => *dim,
            PinchingMap::Factor { dim_a, dim_b } => dim_a * dim_b,
        }
    }
}

pub fn pinch(e: &PinchingMap, a: &HermitianOperator) -> Result<HermitianOperator> {
    if e.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            found: a.dim(),
        });
    }
    match e {
        PinchingMap::Blocks { dim, blocks } => {
            let mut m = CMatrix::zeros(*dim, *dim);
            for b in blocks {
                for &i in b {
                    for &j in b {
                        m[(i, j)] = a.m[(i, j)];
                    }
                }
            }
            Ok(HermitianOperator { m })
        }
        PinchingMap::Factor { dim_a, dim_b } => {
            let reduced = partial_trace_first(a, *dim_a, *dim_b)?;
            let id = HermitianOperator::identity(*dim_a).scale(1.0 / *dim_a as f64);
            Ok(tensor(&id, &reduced))
        }
    }
}
