use num_complex::Complex64;

use super::{assemble, eig_matrix, CMatrix, HermitianOperator};
use crate::error::{Error, Result};

/// Eigendecomposition of a positive semidefinite operator with the kernel
/// made explicit: kernel eigenvalues are stored as exact zeros with
/// logarithm `-inf`. States produced by the exponential parameterization
/// carry their log-eigenvalues directly, so tiny eigenvalues keep full
/// relative precision.
#[derive(Clone, Debug)]
pub(crate) struct Spectrum {
    pub values: Vec<f64>,
    pub logs: Vec<f64>,
    pub vectors: CMatrix,
}

impl Spectrum {
    pub fn of(op: &HermitianOperator, cutoff: Option<f64>) -> Result<Self> {
        let sd = eig_matrix(op.matrix());
        let cut = cutoff.unwrap_or_else(|| sd.default_cutoff());
        let min = sd.min_eigenvalue();
        if min < -cut.max(0.0) {
            return Err(Error::NegativeSpectrum(min));
        }
        let mut values = Vec::with_capacity(sd.eigenvalues.len());
        let mut logs = Vec::with_capacity(sd.eigenvalues.len());
        for &l in &sd.eigenvalues {
            if l > cut {
                values.push(l);
                logs.push(l.ln());
            } else {
                values.push(0.0);
                logs.push(f64::NEG_INFINITY);
            }
        }
        Ok(Self {
            values,
            logs,
            vectors: sd.eigenvectors,
        })
    }

    pub fn from_logs(vectors: CMatrix, logs: Vec<f64>) -> Self {
        let values = logs.iter().map(|l| l.exp()).collect();
        Self {
            values,
            logs,
            vectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn in_support(&self, i: usize) -> bool {
        self.logs[i] > f64::NEG_INFINITY
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.in_support(i)).collect()
    }

    pub fn rank(&self) -> usize {
        (0..self.dim()).filter(|&i| self.in_support(i)).count()
    }

    pub fn is_full_rank(&self) -> bool {
        self.logs.iter().all(|l| *l > f64::NEG_INFINITY)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().fold(0.0, |a, &b| a.max(b))
    }

    pub fn trace(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `U_self† V_other`; entry `(i, j)` is `⟨u_i|v_j⟩`.
    pub fn overlap(&self, other: &Spectrum) -> CMatrix {
        self.vectors.adjoint() * &other.vectors
    }

    /// Pseudo-power on the support.
    pub fn power_matrix(&self, p: f64) -> CMatrix {
        let vals: Vec<f64> = self
            .logs
            .iter()
            .map(|&l| {
                if l > f64::NEG_INFINITY {
                    (p * l).exp()
                } else {
                    0.0
                }
            })
            .collect();
        assemble(&self.vectors, &vals)
    }

    pub fn log_matrix(&self) -> CMatrix {
        let vals: Vec<f64> = self
            .logs
            .iter()
            .map(|&l| if l > f64::NEG_INFINITY { l } else { 0.0 })
            .collect();
        assemble(&self.vectors, &vals)
    }

    pub fn projector(&self) -> CMatrix {
        let vals: Vec<f64> = (0..self.dim())
            .map(|i| if self.in_support(i) { 1.0 } else { 0.0 })
            .collect();
        assemble(&self.vectors, &vals)
    }

    pub fn matrix(&self) -> CMatrix {
        assemble(&self.vectors, &self.values)
    }

    /// Operator norm of the part of `rho` living on the kernel of `self`.
    pub fn leakage(&self, rho: &HermitianOperator) -> f64 {
        let kernel: Vec<usize> = (0..self.dim()).filter(|&i| !self.in_support(i)).collect();
        if kernel.is_empty() {
            return 0.0;
        }
        let k = CMatrix::from_fn(self.dim(), kernel.len(), |r, c| {
            self.vectors[(r, kernel[c])]
        });
        let m = k.adjoint() * rho.matrix() * &k;
        let sd = eig_matrix(&((&m + m.adjoint()) * Complex64::new(0.5, 0.0)));
        sd.eigenvalues.iter().fold(0.0, |a, l| a.max(l.abs()))
    }
}
