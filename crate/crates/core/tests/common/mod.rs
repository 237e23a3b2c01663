//! Independent reference computations. Nothing here calls into the
//! closed-form solver.

#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

pub const GRID: usize = 1 << 16;

pub fn grid(intervals: usize) -> Vec<f64> {
    (0..=intervals)
        .map(|i| TAU * i as f64 / intervals as f64)
        .collect()
}

/// `x ↦ ∫_0^x f` on the grid, cumulative trapezoid.
pub fn cumulative_trapezoid(values: &[f64]) -> Vec<f64> {
    let h = TAU / (values.len() - 1) as f64;
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    out.push(0.0);
    for w in values.windows(2) {
        acc += 0.5 * h * (w[0] + w[1]);
        out.push(acc);
    }
    out
}

/// `p`-fold integration from 0, i.e. the Volterra operator of order `p`.
pub fn volterra(values: &[f64], p: u32) -> Vec<f64> {
    let mut v = values.to_vec();
    for _ in 0..p {
        v = cumulative_trapezoid(&v);
    }
    v
}

/// Orthonormal coefficients `(c0, cos 1, sin 1, …)` by closed trapezoid.
pub fn project(values: &[f64], n: usize) -> Vec<f64> {
    let intervals = values.len() - 1;
    let h = TAU / intervals as f64;
    let w = |i: usize| if i == 0 || i == intervals { 0.5 * h } else { h };
    let mut out = vec![
        values
            .iter()
            .enumerate()
            .map(|(i, v)| w(i) * v)
            .sum::<f64>()
            / TAU.sqrt(),
    ];
    for k in 1..=n {
        let (mut c, mut s) = (0.0, 0.0);
        for (i, v) in values.iter().enumerate() {
            let t = TAU * i as f64 / intervals as f64;
            c += w(i) * v * (k as f64 * t).cos();
            s += w(i) * v * (k as f64 * t).sin();
        }
        out.push(c / PI.sqrt());
        out.push(s / PI.sqrt());
    }
    out
}

/// Basis element `index` of the interleaved ordering, sampled on the grid.
pub fn basis_samples(index: usize, ts: &[f64]) -> Vec<f64> {
    if index == 0 {
        return ts.iter().map(|_| 1.0 / TAU.sqrt()).collect();
    }
    let k = index.div_ceil(2) as f64;
    if index % 2 == 1 {
        ts.iter().map(|t| (k * t).cos() / PI.sqrt()).collect()
    } else {
        ts.iter().map(|t| (k * t).sin() / PI.sqrt()).collect()
    }
}

/// Central finite difference of order 1, 2 or 3.
pub fn finite_difference(f: impl Fn(f64) -> f64, x: f64, order: u32, h: f64) -> f64 {
    match order {
        1 => (f(x + h) - f(x - h)) / (2.0 * h),
        2 => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
        3 => {
            (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) / (2.0 * h * h * h)
        }
        _ => panic!("unsupported order {order}"),
    }
}

/// Componentwise `|a − b| ≤ tol·max(|b|, floor)`.
pub fn close(a: &[f64], b: &[f64], tol: f64, floor: f64) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| (x - y).abs() <= tol * y.abs().max(floor))
}
