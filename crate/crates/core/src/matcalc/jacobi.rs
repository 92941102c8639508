//! One-sided Jacobi singular values.
//!
//! For `G = B·D` with `D` diagonal the computed singular values carry a
//! relative error of order `ε·κ(B)`, independent of the spread of `D`. This
//! keeps tiny eigenvalues of `σ^γ ρ σ^γ` meaningful when `σ^γ` spans many
//! orders of magnitude.

use num_complex::Complex64;

use super::CMatrix;

const MAX_SWEEPS: usize = 60;

/// Singular values of `g` (one per column), in descending order.
pub(crate) fn singular_values(g: &CMatrix) -> Vec<f64> {
    let mut g = g.clone();
    let (rows, cols) = g.shape();
    let tol = f64::EPSILON * rows.max(1) as f64;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..cols {
            for j in i + 1..cols {
                let a: f64 = g.column(i).iter().map(|z| z.norm_sqr()).sum();
                let b: f64 = g.column(j).iter().map(|z| z.norm_sqr()).sum();
                let c: Complex64 = g
                    .column(i)
                    .iter()
                    .zip(g.column(j).iter())
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let cn = c.norm();
                if cn == 0.0 || cn <= tol * (a * b).sqrt() {
                    continue;
                }
                rotated = true;
                // Rotate (g_i, e^{-iφ} g_j) so that the pair becomes orthogonal.
                let phase = c / cn;
                let zeta = (b - a) / (2.0 * cn);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for r in 0..rows {
                    let x = g[(r, i)];
                    let y = g[(r, j)] * phase.conj();
                    g[(r, i)] = x * cs - y * sn;
                    g[(r, j)] = x * sn + y * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..cols)
        .map(|j| g.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_columns_keep_relative_accuracy() {
        // [[1, 1], [1, 2]] · diag(1, 1e-12): singular values of the scaled
        // matrix are 1e-12 · (det / largest) to leading order.
        let g = CMatrix::from_fn(2, 2, |r, c| {
            let b = [[1.0, 1.0], [1.0, 2.0]][r][c];
            Complex64::new(b * [1.0, 1e-12][c], 0.0)
        });
        let sv = singular_values(&g);
        let product = sv[0] * sv[1];
        assert!((product - 1e-12).abs() < 1e-12 * 1e-13);
        assert!((sv[0] - 2f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn matches_eigenvalues_of_gram_matrix() {
        let g = CMatrix::from_fn(3, 2, |r, c| Complex64::new((r + 2 * c) as f64, (r * c) as f64 - 1.0));
        let gram = g.adjoint() * &g;
        let mut ev: Vec<f64> = super::super::eig_matrix(&gram).eigenvalues;
        ev.sort_by(|x, y| y.total_cmp(x));
        let sv = singular_values(&g);
        for (s, e) in sv.iter().zip(&ev) {
            assert!((s * s - e).abs() < 1e-10 * e.abs().max(1.0));
        }
    }
}
