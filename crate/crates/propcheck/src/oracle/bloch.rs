//! Grid minimization over qubit states.
//!
//! Evaluates the objective on a cubic lattice inside the Bloch ball, then
//! refines the best lattice points by pattern search over the 26 lattice
//! directions, halving the step whenever no neighbour improves.

use qexp_core::{DensityOperator, Result};

#[derive(Clone, Debug)]
pub struct BlochGrid {
    /// Spacing of the initial lattice.
    pub step: f64,
    /// Lattice points are kept inside this radius.
    pub radius: f64,
    /// Number of lattice winners to refine.
    pub candidates: usize,
    /// Pattern search stops once the step is below this.
    pub final_step: f64,
}

impl Default for BlochGrid {
    fn default() -> Self {
        Self {
            step: 0.1,
            radius: 0.995,
            candidates: 2,
            final_step: 1e-9,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BlochMinimum {
    pub bloch: [f64; 3],
    pub state: DensityOperator,
    pub value: f64,
    pub evaluations: usize,
}

const MAX_RADIUS: f64 = 1.0 - 1e-12;

/// Minimizes `f` over qubit states. Points where `f` fails count as `+∞`.
pub fn minimize<F>(mut f: F, grid: &BlochGrid) -> Result<BlochMinimum>
where
    F: FnMut(&DensityOperator) -> Result<f64>,
{
    let mut evals = 0usize;
    let mut eval = |r: [f64; 3]| -> f64 {
        evals += 1;
        match DensityOperator::from_bloch(r) {
            Ok(s) => match f(&s) {
                Ok(v) if !v.is_nan() => v,
                _ => f64::INFINITY,
            },
            Err(_) => f64::INFINITY,
        }
    };
    let n = (grid.radius / grid.step).floor() as i64;
    let mut pts: Vec<([f64; 3], f64)> = Vec::new();
    for i in -n..=n {
        for j in -n..=n {
            for l in -n..=n {
                let r = [i as f64 * grid.step, j as f64 * grid.step, l as f64 * grid.step];
                if norm(r) <= grid.radius {
                    pts.push((r, eval(r)));
                }
            }
        }
    }
    pts.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut best = ([0.0; 3], f64::INFINITY);
    for &(start, v0) in pts.iter().take(grid.candidates.max(1)) {
        let (r, v) = pattern_search(&mut eval, start, v0, grid.step / 2.0, grid.final_step);
        if v < best.1 {
            best = (r, v);
        }
    }
    Ok(BlochMinimum {
        bloch: best.0,
        state: DensityOperator::from_bloch(best.0)?,
        value: best.1,
        evaluations: evals,
    })
}

fn pattern_search<E: FnMut([f64; 3]) -> f64>(
    eval: &mut E,
    mut c: [f64; 3],
    mut vc: f64,
    mut h: f64,
    final_step: f64,
) -> ([f64; 3], f64) {
    let mut iterations = 0;
    while h >= final_step && iterations < 10_000 {
        iterations += 1;
        let mut best = (c, vc);
        for i in -1..=1 {
            for j in -1..=1 {
                for l in -1..=1 {
                    if i == 0 && j == 0 && l == 0 {
                        continue;
                    }
                    let r = [c[0] + i as f64 * h, c[1] + j as f64 * h, c[2] + l as f64 * h];
                    if norm(r) > MAX_RADIUS {
                        continue;
                    }
                    let v = eval(r);
                    if v < best.1 {
                        best = (r, v);
                    }
                }
            }
        }
        if best.1 < vc {
            (c, vc) = best;
        } else {
            h *= 0.5;
        }
    }
    (c, vc)
}

fn norm(r: [f64; 3]) -> f64 {
    (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_the_closest_state() {
        let target = DensityOperator::from_bloch([0.3, -0.2, 0.5]).unwrap();
        let m = minimize(
            |s| Ok(qexp_core::matcalc::trace_distance(s, &target).powi(2)),
            &BlochGrid::default(),
        )
        .unwrap();
        assert!(m.value < 1e-16);
        assert!((m.bloch[0] - 0.3).abs() < 1e-8);
    }
}
