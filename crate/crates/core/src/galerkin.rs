//! Galerkin matrices of the `p`-fold integration operator
//! `(A^{(p)}φ)(x) = 1/(p−1)! ∫_0^x (x−t)^{p−1} φ(t) dt` on `X_n`, and the
//! closed-form solution of the projected system.

use std::f64::consts::{PI, SQRT_2, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basis::{TrigKind, TrigPoly};
use crate::error::{Error, Result};

/// Differentiation order `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum Order {
    First = 1,
    Second = 2,
    Third = 3,
}

impl Order {
    pub const ALL: [Order; 3] = [Order::First, Order::Second, Order::Third];

    pub fn get(self) -> u32 {
        self as u32
    }

    /// Entry `(0, 0)` of the Galerkin matrix, `(A^{(p)} 1, 1)/(2π)`.
    pub fn leading_entry(self) -> f64 {
        match self {
            Order::First => PI,
            Order::Second => 2.0 * PI * PI / 3.0,
            Order::Third => PI.powi(3) / 3.0,
        }
    }
}

impl TryFrom<u32> for Order {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        match p {
            1 => Ok(Order::First),
            2 => Ok(Order::Second),
            3 => Ok(Order::Third),
            other => Err(Error::UnsupportedOrder(other)),
        }
    }
}

impl From<Order> for u32 {
    fn from(o: Order) -> u32 {
        o.get()
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.get())
    }
}

/// Dense `(2n+1)×(2n+1)` matrix `m_ij = (A^{(p)} e_j, e_i)` in the basis
/// `e_0 = 1/√(2π), e_{2k−1} = cos kt/√π, e_{2k} = sin kt/√π`.
#[derive(Debug, Clone, PartialEq)]
pub struct GalerkinMatrix {
    order: Order,
    n: usize,
    entries: Vec<f64>,
}

impl GalerkinMatrix {
    pub fn order(&self) -> Order {
        self.order
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim() + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        let d = self.dim();
        self.entries[i * d + j] = v;
    }

    /// Matrix-vector product, i.e. `A_n^{(p)} φ` for `φ ∈ X_n`.
    pub fn apply(&self, phi: &TrigPoly) -> Result<TrigPoly> {
        if phi.degree() != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                found: phi.degree(),
            });
        }
        let x = phi.to_interleaved();
        let d = self.dim();
        let y: Vec<f64> = (0..d)
            .map(|i| {
                self.entries[i * d..(i + 1) * d]
                    .iter()
                    .zip(&x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        TrigPoly::from_interleaved(&y)
    }

    /// Column `j` (in the interleaved basis ordering) as an element of `X_n`.
    pub fn column(&self, j: usize) -> TrigPoly {
        let col: Vec<f64> = (0..self.dim()).map(|i| self.get(i, j)).collect();
        TrigPoly::from_interleaved(&col).expect("odd dimension")
    }

    /// Row-major CSV, one matrix row per line, shortest round-trip formatting.
    pub fn to_csv(&self) -> String {
        let d = self.dim();
        let mut out = String::with_capacity(d * d * 24);
        for row in self.entries.chunks(d) {
            let line: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn assemble_matrix(order: Order, n: usize) -> GalerkinMatrix {
    let d = 2 * n + 1;
    let mut m = GalerkinMatrix {
        order,
        n,
        entries: vec![0.0; d * d],
    };
    m.set(0, 0, order.leading_entry());
    for k in 1..=n {
        let kf = k as f64;
        // first row (u_k) and first column (v_k)
        let (u, v) = match order {
            Order::First => ((0.0, SQRT_2 / kf), (0.0, -SQRT_2 / kf)),
            Order::Second => (
                (SQRT_2 / (kf * kf), SQRT_2 * PI / kf),
                (SQRT_2 / (kf * kf), -SQRT_2 * PI / kf),
            ),
            Order::Third => {
                let c = SQRT_2 * PI / (kf * kf);
                let s = 2.0 * SQRT_2 * PI * PI / (3.0 * kf) - SQRT_2 / kf.powi(3);
                ((c, s), (c, -s))
            }
        };
        m.set(0, 2 * k - 1, u.0);
        m.set(0, 2 * k, u.1);
        m.set(2 * k - 1, 0, v.0);
        m.set(2 * k, 0, v.1);
    }
    for i in 1..=n {
        for j in 1..=n {
            let (fi, fj) = (i as f64, j as f64);
            let block = match (order, i == j) {
                (Order::First, true) => [[0.0, -1.0 / fi], [1.0 / fi, 0.0]],
                (Order::First, false) => [[0.0; 2]; 2],
                (Order::Second, true) => [[-1.0 / (fi * fi), 0.0], [0.0, -3.0 / (fi * fi)]],
                // (A² sin jt, sin it)/π = −2/(ij) for i ≠ j
                (Order::Second, false) => [[0.0, 0.0], [0.0, -2.0 / (fi * fj)]],
                (Order::Third, true) => [
                    [0.0, 3.0 / fi.powi(3)],
                    [-3.0 / fi.powi(3), -2.0 * PI / (fi * fi)],
                ],
                (Order::Third, false) => [
                    [0.0, 2.0 / (fi * fi * fj)],
                    [-2.0 / (fi * fj * fj), -2.0 * PI / (fi * fj)],
                ],
            };
            for (a, row) in block.iter().enumerate() {
                for (b, v) in row.iter().enumerate() {
                    m.set(2 * i - 1 + a, 2 * j - 1 + b, *v);
                }
            }
        }
    }
    m
}

/// Scalars entering the closed-form solution at truncation degree `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConstants {
    pub n: usize,
    /// `S_n = Σ_{k≤n} 1/k²`
    pub s: f64,
    pub l: f64,
    pub t: f64,
    pub f: f64,
    /// `K_n = −2π² L_n`
    pub k: f64,
    /// `ε_{n,k}` for `k = 1..=n`
    pub eps: Vec<f64>,
}

impl SolverConstants {
    pub fn eps_nk(&self, k: usize) -> f64 {
        self.eps[k - 1]
    }
}

pub fn solver_constants(n: usize) -> SolverConstants {
    let s: f64 = (1..=n).rev().map(|k| 1.0 / (k * k) as f64).sum();
    // Σ_{k>n} 1/k²; L_n and T_n are evaluated in the rearranged forms
    // 1/(4(2n+1)) − R/(2π²) and (1/4 − (2n+1)R/π²)/(2n+1)², which avoid
    // cancelling O(1) terms down to O(1/n²).
    let tail = PI * PI / 6.0 - s;
    let m = (2 * n + 1) as f64;
    let l = 1.0 / (4.0 * m) - tail / (2.0 * PI * PI);
    let t = (0.25 - m * tail / (PI * PI)) / (m * m);
    let f = 4.0 * SQRT_2 * PI * PI * l / m;
    let k = -2.0 * PI * PI * l;
    let eps = (1..=n)
        .map(|j| {
            let jf = j as f64;
            SQRT_2 * (1.0 + 2.0 * jf * jf * k / m)
        })
        .collect();
    SolverConstants {
        n,
        s,
        l,
        t,
        f,
        k,
        eps,
    }
}

/// Unique solution of `M_n^{(p)} u = b` via the closed-form inverse; the
/// truncation degree is the degree of `rhs`.
pub fn solve_analytic(order: Order, rhs: &TrigPoly) -> TrigPoly {
    let n = rhs.degree();
    let m = (2 * n + 1) as f64;
    let f0 = rhs.c0();
    let f = rhs.cos_coeffs();
    let g = rhs.sin_coeffs();
    let kf = |k: usize| (k + 1) as f64;

    let sum_f: f64 = f.iter().rev().sum();
    let sum_kg: f64 = g.iter().enumerate().rev().map(|(k, v)| kf(k) * v).sum();
    let sum_k2f: f64 = f
        .iter()
        .enumerate()
        .rev()
        .map(|(k, v)| kf(k) * kf(k) * v)
        .sum();

    let mut out = TrigPoly::zeros(n);
    match order {
        Order::First => {
            let x0 = (f0 + SQRT_2 * sum_f) / PI;
            out.set_c0(x0);
            for k in 0..n {
                out.cos_coeffs_mut()[k] = SQRT_2 * x0 + kf(k) * g[k];
                out.sin_coeffs_mut()[k] = -kf(k) * f[k];
            }
        }
        Order::Second => {
            let c = solver_constants(n);
            let x0 = (f0 + SQRT_2 * sum_f + SQRT_2 * PI / m * sum_kg) / (4.0 * PI * PI * c.l);
            out.set_c0(x0);
            for k in 0..n {
                let k1 = kf(k);
                out.cos_coeffs_mut()[k] = SQRT_2 * x0 - k1 * k1 * f[k];
                out.sin_coeffs_mut()[k] =
                    2.0 * k1 / m * sum_kg - k1 * k1 * g[k] - SQRT_2 * k1 * PI / m * x0;
            }
        }
        Order::Third => {
            let c = solver_constants(n);
            let x0 = (f0 + SQRT_2 * sum_f + SQRT_2 * PI / m * sum_kg - c.f * sum_k2f)
                / (4.0 * PI.powi(3) * c.t);
            out.set_c0(x0);
            for k in 0..n {
                let k1 = kf(k);
                let k2 = k1 * k1;
                out.cos_coeffs_mut()[k] = -k2 * k1 * g[k] + 2.0 * k2 / m * sum_kg
                    - TAU * k2 / (m * m) * sum_k2f
                    + c.eps[k] * x0;
                out.sin_coeffs_mut()[k] =
                    k2 * k1 * f[k] - 2.0 * k1 / m * sum_k2f - SQRT_2 * PI * k1 / m * x0;
            }
        }
    }
    out
}

/// `P_n A^{(p)}` applied to `cos jt/√π` or `sin jt/√π` for `j > n`, where the
/// projection has closed-form coefficients.
pub fn projected_image(order: Order, n: usize, j: usize, kind: TrigKind) -> Result<TrigPoly> {
    if j <= n {
        return Err(Error::OutOfRegime { n, j });
    }
    let jf = j as f64;
    let mut out = TrigPoly::zeros(n);
    match (order, kind) {
        (Order::First, TrigKind::Cos) => {}
        (Order::Second, TrigKind::Cos) => out.set_c0(SQRT_2 / (jf * jf)),
        (Order::Third, TrigKind::Cos) => {
            out.set_c0(SQRT_2 * PI / (jf * jf));
            for (k, d) in out.sin_coeffs_mut().iter_mut().enumerate() {
                *d = -2.0 / ((k + 1) as f64 * jf * jf);
            }
        }
        (Order::First, TrigKind::Sin) => out.set_c0(SQRT_2 / jf),
        (Order::Second, TrigKind::Sin) => {
            out.set_c0(SQRT_2 * PI / jf);
            for (k, t) in out.sin_coeffs_mut().iter_mut().enumerate() {
                *t = -2.0 / ((k + 1) as f64 * jf);
            }
        }
        (Order::Third, TrigKind::Sin) => {
            out.set_c0(2.0 * SQRT_2 * PI * PI / (3.0 * jf) - SQRT_2 / jf.powi(3));
            for k in 0..n {
                let k1 = (k + 1) as f64;
                out.cos_coeffs_mut()[k] = 2.0 / (k1 * k1 * jf);
                out.sin_coeffs_mut()[k] = -TAU / (k1 * jf);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn order_parsing() {
        assert_eq!(Order::try_from(2).unwrap(), Order::Second);
        assert!(matches!(
            Order::try_from(4),
            Err(Error::UnsupportedOrder(4))
        ));
        assert!(matches!(
            Order::try_from(0),
            Err(Error::UnsupportedOrder(0))
        ));
    }

    #[test]
    fn first_order_n1_matrix() {
        let m = assemble_matrix(Order::First, 1);
        let want = [PI, 0.0, SQRT_2, 0.0, 0.0, -1.0, -SQRT_2, 1.0, 0.0];
        for (a, b) in m.entries().iter().zip(want) {
            assert_relative_eq!(*a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn blocks() {
        let m = assemble_matrix(Order::Second, 1);
        assert_eq!(
            (m.get(1, 1), m.get(1, 2), m.get(2, 1), m.get(2, 2)),
            (-1.0, 0.0, 0.0, -3.0)
        );

        let m = assemble_matrix(Order::Third, 2);
        // M_12 occupies rows 1..=2, columns 3..=4
        assert_relative_eq!(m.get(1, 3), 0.0);
        assert_relative_eq!(m.get(1, 4), 1.0);
        assert_relative_eq!(m.get(2, 3), -0.5);
        assert_relative_eq!(m.get(2, 4), -PI);

        for p in Order::ALL {
            let m = assemble_matrix(p, 3);
            assert_eq!(m.dim(), 7);
            assert_eq!(m.entries().len(), 49);
            assert_eq!(m.get(0, 0), p.leading_entry());
        }
    }

    #[test]
    fn constants_small_n() {
        let c = solver_constants(1);
        assert_eq!(c.s, 1.0);
        assert_relative_eq!(c.l, 1.0 / (2.0 * PI * PI), max_relative = 1e-13);
        assert_relative_eq!(c.k, -1.0, max_relative = 1e-13);
        let t5 = solver_constants(5).t;
        assert!((1.0 / (396.0 * 55.0)..=3.0 / (40.0 * 55.0)).contains(&t5));
    }

    #[test]
    fn rearranged_constants_match_literal_forms() {
        for n in [1usize, 2, 3, 7, 20, 60] {
            let c = solver_constants(n);
            let m = (2 * n + 1) as f64;
            let nf = n as f64;
            let l = 1.0 / 6.0 + c.s / (2.0 * PI * PI) - 0.25 * 2.0 * nf / m;
            let t = 1.0 / 12.0 + c.s / (m * PI * PI) - 2.0 * nf / (3.0 * m) + nf * nf / (m * m);
            assert_relative_eq!(c.l, l, max_relative = 1e-10);
            assert_relative_eq!(c.t, t, max_relative = 1e-8);
            assert!(c.l > 0.0 && c.t > 0.0);
        }
    }

    #[test]
    fn s_n_monotone_below_limit() {
        let mut prev = 0.0;
        for n in 1..200 {
            let s = solver_constants(n).s;
            assert!(s > prev && s < PI * PI / 6.0);
            prev = s;
        }
    }

    #[test]
    fn first_order_recovers_cos() {
        let rhs = TrigPoly::new(0.0, vec![0.0, 0.0], vec![PI.sqrt(), 0.0]).unwrap();
        let u = solve_analytic(Order::First, &rhs);
        assert_relative_eq!(u.cos_coeff(1), PI.sqrt(), epsilon = 1e-14);
        assert!(u.c0().abs() < 1e-15);
        assert!(u.sin_coeffs().iter().all(|v| v.abs() < 1e-15));
        assert!(u.cos_coeff(2).abs() < 1e-15);
    }

    #[test]
    fn second_order_one_minus_cos() {
        let rhs =
            TrigPoly::new(TAU.sqrt(), vec![-PI.sqrt(), 0.0, 0.0], vec![0.0, 0.0, 0.0]).unwrap();
        let u = solve_analytic(Order::Second, &rhs);
        assert_relative_eq!(u.cos_coeff(1), PI.sqrt(), epsilon = 1e-13);
        let rest = u.sub(&TrigPoly::new(0.0, vec![PI.sqrt(), 0.0, 0.0], vec![0.0; 3]).unwrap());
        assert!(rest.l2_norm() < 1e-13);
    }

    #[test]
    fn zero_rhs() {
        for p in Order::ALL {
            assert_eq!(solve_analytic(p, &TrigPoly::zeros(4)).l2_norm(), 0.0);
        }
    }

    #[test]
    fn closed_form_images() {
        for n in [1, 2, 5] {
            assert_eq!(
                projected_image(Order::First, n, n + 3, TrigKind::Cos)
                    .unwrap()
                    .l2_norm(),
                0.0
            );
        }
        let s = projected_image(Order::First, 2, 5, TrigKind::Sin).unwrap();
        assert_relative_eq!(s.c0(), SQRT_2 / 5.0);
        assert_eq!(s.l2_norm(), s.c0());

        let c = projected_image(Order::Third, 1, 4, TrigKind::Cos).unwrap();
        assert_relative_eq!(c.c0(), SQRT_2 * PI / 16.0);
        assert_eq!(c.cos_coeff(1), 0.0);
        assert_relative_eq!(c.sin_coeff(1), -0.125);

        assert!(matches!(
            projected_image(Order::Second, 3, 3, TrigKind::Sin),
            Err(Error::OutOfRegime { n: 3, j: 3 })
        ));
    }

    #[test]
    fn matrix_csv_shape() {
        let csv = assemble_matrix(Order::Second, 2).to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines.iter().all(|l| l.split(',').count() == 5));
        let first: f64 = lines[0].split(',').next().unwrap().parse().unwrap();
        assert_eq!(first, 2.0 * PI * PI / 3.0);
    }
}
