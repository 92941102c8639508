//! One-dimensional searches used by the oracles and the nested
//! optimizations of the duality suites.

use qexp_core::Result;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section minimum of a unimodal function on `[a, b]`; returns
/// `(argmin, min)` including the end points.
pub fn golden_min<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (a0, b0) = (a, b);
    let (mut a, mut b) = (a, b);
    let fa = f(a)?;
    let fb = f(b)?;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    // End points only count when the bracket never moved away from them.
    if a == a0 && fa < best.1 {
        best = (a0, fa);
    }
    if b == b0 && fb < best.1 {
        best = (b0, fb);
    }
    Ok(best)
}

/// Golden-section maximum; returns `(argmax, max)`.
pub fn golden_max<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (x, v) = golden_min(|x| Ok(-f(x)?), a, b, tol)?;
    Ok((x, -v))
}

/// Minimum over `[a, b]` by an `n`-interval grid followed by golden-section
/// search on the two cells around the best grid point.
pub fn grid_golden_min<F>(mut f: F, a: f64, b: f64, n: usize, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let n = n.max(2);
    let h = (b - a) / n as f64;
    let mut best = (a, f64::INFINITY);
    for i in 0..=n {
        let x = if i == n { b } else { a + i as f64 * h };
        let v = f(x)?;
        if v < best.1 {
            best = (x, v);
        }
    }
    if !best.1.is_finite() {
        return Ok(best);
    }
    let lo = (best.0 - h).max(a);
    let hi = (best.0 + h).min(b);
    let refined = golden_min(&mut f, lo, hi, tol)?;
    Ok(if refined.1 < best.1 { refined } else { best })
}

/// Maximum counterpart of [`grid_golden_min`].
pub fn grid_golden_max<F>(mut f: F, a: f64, b: f64, n: usize, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (x, v) = grid_golden_min(|x| Ok(-f(x)?), a, b, n, tol)?;
    Ok((x, -v))
}
