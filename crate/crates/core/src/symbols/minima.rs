use rayon::prelude::*;
use serde::Serialize;

use super::{SymbolModel, SymbolSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinimaReport {
    pub count: usize,
    pub locations: Vec<Vec<f64>>,
    pub values: Vec<f64>,
}

/// `m + ρh⁻²/2` for Wilson fermions, `m + 1` otherwise.
pub fn default_threshold(spec: &SymbolSpec) -> f64 {
    match spec.model() {
        SymbolModel::Wilson { spacing, rho } => spec.mass() + rho / (2.0 * spacing * spacing),
        _ => spec.mass() + 1.0,
    }
}

/// Per-axis sample coordinates on `[0, period)`: the uniform grid plus the
/// points `0` and `1/(2h)` reduced modulo the period.
fn axis_coordinates(period: f64, spacing: f64, points: usize) -> Vec<f64> {
    let mut xs: Vec<f64> = (0..points).map(|k| k as f64 * period / points as f64).collect();
    xs.push(0.0);
    xs.push((0.5 / spacing).rem_euclid(period));
    xs.sort_by(f64::total_cmp);
    let tol = 1e-12 * period;
    xs.dedup_by(|a, b| (*a - *b).abs() <= tol || (period - *a + *b).abs() <= tol);
    xs
}

/// Counts strict local minima of the positive dispersion branch on the
/// model's fundamental torus whose value does not exceed `threshold`.
///
/// Neighbours are the `3^d − 1` adjacent grid points with periodic wrap.
/// Adjacent points of equal value that are each no larger than all their
/// neighbours are merged and counted once.
pub fn count_light_minima(spec: &SymbolSpec, points: usize, threshold: f64) -> Result<MinimaReport> {
    if !spec.model().is_lattice() {
        return Err(Error::arg("light minima are counted for lattice models only"));
    }
    if points < 8 {
        return Err(Error::arg(format!("grid density must be at least 8, got {points}")));
    }
    let period = spec.period().expect("lattice models are periodic");
    let spacing = spec.spacing().expect("lattice models have a spacing");
    let axis = axis_coordinates(period, spacing, points);
    let len = axis.len();
    let d = spec.dim();
    let total = len
        .checked_pow(d as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| Error::arg("minima grid too large"))?;

    let unravel = |mut idx: usize| -> Vec<usize> {
        let mut out = vec![0; d];
        for k in (0..d).rev() {
            out[k] = idx % len;
            idx /= len;
        }
        out
    };
    let ravel = |c: &[usize]| c.iter().fold(0, |acc, &x| acc * len + x);
    let momentum = |c: &[usize]| c.iter().map(|&i| axis[i]).collect::<Vec<f64>>();

    let values: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|i| spec.energy(&momentum(&unravel(i))))
        .collect();

    let offsets: Vec<Vec<isize>> = (0..3usize.pow(d as u32))
        .map(|mut o| {
            (0..d)
                .map(|_| {
                    let v = (o % 3) as isize - 1;
                    o /= 3;
                    v
                })
                .collect::<Vec<_>>()
        })
        .filter(|o: &Vec<isize>| o.iter().any(|&x| x != 0))
        .collect();
    let neighbours = |i: usize| -> Vec<usize> {
        let c = unravel(i);
        let mut out: Vec<usize> = offsets
            .iter()
            .map(|o| {
                let nc: Vec<usize> = c
                    .iter()
                    .zip(o)
                    .map(|(&x, &dx)| (x as isize + dx).rem_euclid(len as isize) as usize)
                    .collect();
                ravel(&nc)
            })
            .filter(|&n| n != i)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    let eps = |v: f64| 1e-12 * v.abs().max(1.0);

    let candidate: Vec<bool> = (0..total)
        .into_par_iter()
        .map(|i| {
            let v = values[i];
            v <= threshold + eps(threshold)
                && neighbours(i).iter().all(|&n| values[n] >= v - eps(v))
        })
        .collect();

    // Flood-fill plateaus of equal-valued candidates.
    let mut label = vec![usize::MAX; total];
    let mut report = MinimaReport {
        count: 0,
        locations: Vec::new(),
        values: Vec::new(),
    };
    for start in 0..total {
        if !candidate[start] || label[start] != usize::MAX {
            continue;
        }
        let v = values[start];
        let id = start;
        let mut stack = vec![start];
        let mut members = Vec::new();
        label[start] = id;
        let mut strict = true;
        while let Some(i) = stack.pop() {
            members.push(i);
            for n in neighbours(i) {
                if (values[n] - v).abs() <= eps(v) {
                    if candidate[n] {
                        if label[n] == usize::MAX {
                            label[n] = id;
                            stack.push(n);
                        }
                    } else {
                        strict = false;
                    }
                }
            }
        }
        if strict {
            let rep = *members.iter().min().expect("non-empty plateau");
            report.count += 1;
            report.locations.push(momentum(&unravel(rep)));
            report.values.push(v);
        }
    }
    Ok(report)
}
