//! Generic scalar and vector optimizers used by the information and exponent
//! routines: Nelder–Mead, a finite-difference BFGS polish, golden-section
//! search and an exponentiated-gradient ascent on the probability simplex.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{Error, Result};

/// Outcome of a local minimization in `R^n`.
#[derive(Clone, Debug)]
pub(crate) struct LocalMin {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    /// Size of the last accepted step (max norm).
    pub last_step: f64,
    pub converged: bool,
}

/// Adaptive Nelder–Mead (dimension-dependent coefficients).
pub(crate) fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    x0: &[f64],
    scale: f64,
    f_tol: f64,
    x_tol: f64,
    max_iter: usize,
) -> LocalMin {
    let n = x0.len();
    if n == 0 {
        let v = f(x0);
        return LocalMin {
            x: vec![],
            value: v,
            iterations: 0,
            last_step: 0.0,
            converged: true,
        };
    }
    let nf = n as f64;
    let (alpha, gamma, rho, shrink) = (
        1.0,
        1.0 + 2.0 / nf,
        0.75 - 1.0 / (2.0 * nf),
        1.0 - 1.0 / nf.max(2.0),
    );
    let mut pts: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += scale;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| f(p)).collect();
    let mut it = 0;
    let mut converged = false;
    while it < max_iter {
        it += 1;
        let mut idx: Vec<usize> = (0..=n).collect();
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = idx.iter().map(|&i| pts[i].clone()).collect();
        vals = idx.iter().map(|&i| vals[i]).collect();
        let spread = (vals[n] - vals[0]).abs();
        let diam = pts[1..]
            .iter()
            .map(|p| max_dist(p, &pts[0]))
            .fold(0.0, f64::max);
        if (spread <= f_tol * (1.0 + vals[0].abs()) && diam <= x_tol * 1e3) || diam <= x_tol {
            converged = true;
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|k| pts[..n].iter().map(|p| p[k]).sum::<f64>() / nf)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            (0..n)
                .map(|k| centroid[k] + t * (pts[n][k] - centroid[k]))
                .collect()
        };
        let xr = along(-alpha);
        let fr = f(&xr);
        if fr < vals[0] {
            let xe = along(-gamma);
            let fe = f(&xe);
            if fe < fr {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
        } else if fr < vals[n - 1] {
            pts[n] = xr;
            vals[n] = fr;
        } else {
            let (xc, fc) = if fr < vals[n] {
                let xc = along(-rho);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(rho);
                let fc = f(&xc);
                (xc, fc)
            };
            if fc < vals[n].min(fr) {
                pts[n] = xc;
                vals[n] = fc;
            } else {
                for i in 1..=n {
                    let p: Vec<f64> = (0..n)
                        .map(|k| pts[0][k] + shrink * (pts[i][k] - pts[0][k]))
                        .collect();
                    vals[i] = f(&p);
                    pts[i] = p;
                }
            }
        }
    }
    let best = (0..=n)
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .unwrap();
    let diam = pts
        .iter()
        .map(|p| max_dist(p, &pts[best]))
        .fold(0.0, f64::max);
    LocalMin {
        x: pts[best].clone(),
        value: vals[best],
        iterations: it,
        last_step: diam,
        converged,
    }
}

fn max_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Central-difference gradient.
fn gradient<F: FnMut(&[f64]) -> f64>(f: &mut F, x: &[f64], h: f64) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    let mut y = x.to_vec();
    for i in 0..x.len() {
        let xi = x[i];
        y[i] = xi + h;
        let up = f(&y);
        y[i] = xi - h;
        let dn = f(&y);
        y[i] = xi;
        g[i] = (up - dn) / (2.0 * h);
    }
    g
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// BFGS with central-difference gradients and Armijo backtracking.
///
/// Stops when the step (max norm) falls below `x_tol`, when the gradient
/// vanishes to `g_tol`, or when no descent step improves the objective
/// (finite-difference noise floor); in the last case `converged` reports
/// whether the gradient was already small.
pub(crate) fn bfgs<F: FnMut(&[f64]) -> f64>(
    f: &mut F,
    x0: &[f64],
    x_tol: f64,
    g_tol: f64,
    max_iter: usize,
) -> LocalMin {
    let n = x0.len();
    let h = 1e-5;
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    let mut g = gradient(f, &x, h);
    let mut hinv: Vec<f64> = identity(n);
    let mut last_step = f64::INFINITY;
    let mut it = 0;
    let mut converged = false;
    let mut scaled = false;
    while it < max_iter {
        it += 1;
        let gmax = g.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if gmax <= g_tol {
            converged = true;
            last_step = last_step.min(gmax);
            break;
        }
        let mut d: Vec<f64> = (0..n)
            .map(|i| -(0..n).map(|j| hinv[i * n + j] * g[j]).sum::<f64>())
            .collect();
        let mut slope = dot(&d, &g);
        if !(slope < 0.0) {
            hinv = identity(n);
            d = g.iter().map(|v| -v).collect();
            slope = dot(&d, &g);
        }
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let xn: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + t * b).collect();
            let fxn = f(&xn);
            if fxn <= fx + 1e-4 * t * slope {
                accepted = Some((xn, fxn));
                break;
            }
            t *= 0.5;
            if t * d.iter().fold(0.0f64, |a, v| a.max(v.abs())) < 1e-16 {
                break;
            }
        }
        let Some((xn, fxn)) = accepted else {
            converged = gmax <= 1e-6;
            last_step = if converged { gmax.min(x_tol) } else { gmax };
            break;
        };
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let gn = gradient(f, &xn, h);
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        last_step = s.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let sy = dot(&s, &y);
        if sy > 1e-16 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() && sy > 0.0 {
            if !scaled {
                let scale = sy / dot(&y, &y);
                for v in hinv.iter_mut() {
                    *v *= scale;
                }
                scaled = true;
            }
            bfgs_update(&mut hinv, &s, &y, sy);
        }
        x = xn;
        fx = fxn;
        g = gn;
        if last_step <= x_tol {
            converged = true;
            break;
        }
    }
    LocalMin {
        x,
        value: fx,
        iterations: it,
        last_step,
        converged,
    }
}

fn identity(n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

fn bfgs_update(hinv: &mut [f64], s: &[f64], y: &[f64], sy: f64) {
    let n = s.len();
    let rho = 1.0 / sy;
    let hy: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|j| hinv[i * n + j] * y[j]).sum())
        .collect();
    let yhy = dot(y, &hy);
    for i in 0..n {
        for j in 0..n {
            hinv[i * n + j] +=
                -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
        }
    }
}

/// Golden-section maximization on `[a, b]`. Returns `(argmax, max)` over all
/// evaluated points, including the endpoints.
pub(crate) fn golden_max<F: FnMut(f64) -> Result<f64>>(
    f: &mut F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
            if f1 > best.1 {
                best = (x1, f1);
            }
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
            if f2 > best.1 {
                best = (x2, f2);
            }
        }
    }
    Ok(best)
}

/// Maximization over the probability simplex.
#[derive(Clone, Debug)]
pub(crate) struct SimplexMax {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Maximizes `f` over the probability simplex on `k` symbols. Two symbols use
/// a grid of step 0.05 refined by golden section; larger alphabets use
/// exponentiated-gradient ascent with finite-difference directional
/// derivatives, started from the uniform point and `restarts` seeded random
/// points. `f` may return `+inf`.
pub(crate) fn maximize_on_simplex<F: FnMut(&[f64]) -> Result<f64>>(
    f: &mut F,
    k: usize,
    restarts: usize,
    seed: u64,
    tol: f64,
) -> Result<SimplexMax> {
    match k {
        0 => Err(Error::InvalidPrior("empty alphabet".into())),
        1 => Ok(SimplexMax {
            point: vec![1.0],
            value: f(&[1.0])?,
            iterations: 0,
        }),
        2 => maximize_binary(f, tol),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut starts = vec![vec![1.0 / k as f64; k]];
            for _ in 0..restarts {
                let w: Vec<f64> = (0..k).map(|_| Exp1.sample(&mut rng)).collect();
                let s: f64 = w.iter().sum();
                starts.push(w.iter().map(|v| v / s).collect());
            }
            let mut best: Option<SimplexMax> = None;
            let mut total = 0;
            for p0 in starts {
                let r = exponentiated_ascent(f, p0, tol)?;
                total += r.iterations;
                if r.value == f64::INFINITY {
                    return Ok(SimplexMax {
                        iterations: total,
                        ..r
                    });
                }
                if best.as_ref().is_none_or(|b| r.value > b.value) {
                    best = Some(r);
                }
            }
            let mut b = best.expect("at least one start");
            b.iterations = total;
            Ok(b)
        }
    }
}

fn maximize_binary<F: FnMut(&[f64]) -> Result<f64>>(f: &mut F, tol: f64) -> Result<SimplexMax> {
    let n = 20;
    let mut vals = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let p = i as f64 / n as f64;
        let v = f(&[p, 1.0 - p])?;
        if v == f64::INFINITY {
            return Ok(SimplexMax {
                point: vec![p, 1.0 - p],
                value: v,
                iterations: i + 1,
            });
        }
        vals.push(v);
    }
    let i = (0..=n)
        .max_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .unwrap();
    let lo = (i.saturating_sub(1)) as f64 / n as f64;
    let hi = ((i + 1).min(n)) as f64 / n as f64;
    let mut evals = n + 1;
    let mut g = |p: f64| {
        evals += 1;
        f(&[p, 1.0 - p])
    };
    let (p, v) = golden_max(&mut g, lo, hi, tol.max(1e-10))?;
    let (p, v) = if vals[i] >= v {
        (i as f64 / n as f64, vals[i])
    } else {
        (p, v)
    };
    Ok(SimplexMax {
        point: vec![p, 1.0 - p],
        value: v,
        iterations: evals,
    })
}

fn exponentiated_ascent<F: FnMut(&[f64]) -> Result<f64>>(
    f: &mut F,
    mut p: Vec<f64>,
    tol: f64,
) -> Result<SimplexMax> {
    let k = p.len();
    let h = 1e-6;
    let mut fp = f(&p)?;
    let mut eta = 1.0;
    let mut it = 0;
    while it < 500 && fp.is_finite() {
        it += 1;
        // Directional derivatives along e_i − p; Σ p_i g_i = 0.
        let mut g = vec![0.0; k];
        for i in 0..k {
            let fwd: Vec<f64> = (0..k)
                .map(|j| p[j] + h * (if i == j { 1.0 } else { 0.0 } - p[j]))
                .collect();
            let up = f(&fwd)?;
            if p[i] >= h {
                let bwd: Vec<f64> = (0..k)
                    .map(|j| p[j] - h * (if i == j { 1.0 } else { 0.0 } - p[j]))
                    .collect();
                g[i] = (up - f(&bwd)?) / (2.0 * h);
            } else {
                g[i] = (up - fp) / h;
            }
        }
        let gap = g.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if gap <= tol {
            break;
        }
        let gmax = g.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let mut improved = false;
        for _ in 0..40 {
            let w: Vec<f64> = p
                .iter()
                .zip(&g)
                .map(|(pi, gi)| pi * (eta * (gi - gmax)).exp())
                .collect();
            let s: f64 = w.iter().sum();
            let q: Vec<f64> = w.iter().map(|v| v / s).collect();
            let fq = f(&q)?;
            if fq > fp {
                p = q;
                fp = fq;
                eta *= 1.5;
                improved = true;
                break;
            }
            eta *= 0.5;
        }
        if !improved {
            break;
        }
    }
    Ok(SimplexMax {
        point: p,
        value: fp,
        iterations: it,
    })
}
