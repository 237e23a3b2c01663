//! Numerical checks of the constants that drive the convergence analysis:
//! coefficient decay of `A_n^† P_n A` on high frequencies, norms of the
//! tail operator `K_n = A_n^† P_n A (I − P_n)` and of `R_n = A_n^† P_n A`,
//! the polynomial growth of `‖A_n^†‖`, and the ranges of the solver
//! constants.

use std::f64::consts::PI;
use std::f64::consts::SQRT_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::basis::{TrigKind, TrigPoly};
use crate::error::{Error, Result};
use crate::galerkin::{assemble_matrix, projected_image, solve_analytic, solver_constants, Order};
use crate::oracle::inverse_operator_norm;
use crate::regularize::builtin_constants;

/// Relative slack for bounds that are attained with equality.
pub const BOUND_TOL: f64 = 1e-12;

/// One line of the verification report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub p: Option<u32>,
    pub n: usize,
    pub j: Option<usize>,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Aggregate of a sweep: all rows, plus the tightest one.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CheckReport {
    pub rows: Vec<CheckRow>,
}

impl CheckReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    /// Largest `value / bound` over rows with a positive bound.
    pub fn worst_ratio(&self) -> Option<(f64, &CheckRow)> {
        self.rows
            .iter()
            .filter(|r| r.bound > 0.0)
            .map(|r| (r.value / r.bound, r))
            .max_by(|a, b| a.0.total_cmp(&b.0))
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.rows.extend(other.rows);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn within(value: f64, bound: f64) -> bool {
    value <= bound + BOUND_TOL * bound.abs().max(1.0)
}

/// Decay constants `C_1..C_6`: the first three bound the image of
/// `cos jt/√π`, the last three that of `sin jt/√π`.
pub fn decay_constants(order: Order) -> [f64; 6] {
    match order {
        Order::First => [0.0, 0.0, 0.0, SQRT_2 / PI, 2.0 / PI, 0.0],
        Order::Second => [SQRT_2, 2.0, PI, 1.5 * SQRT_2, 3.0, 5.0],
        Order::Third => [
            11.0 * SQRT_2,
            23.0,
            11.0 * PI,
            44.0 * SQRT_2 / 3.0,
            30.0,
            48.0,
        ],
    }
}

/// `A_n^† P_n A` applied to one high-frequency basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayRecord {
    pub p: Order,
    pub n: usize,
    pub j: usize,
    pub kind: TrigKind,
    pub coeffs: TrigPoly,
    /// Bounds on `j·|c0|`, `j·max|cos_k|`, `j·max|sin_k|`.
    pub constants: [f64; 3],
}

impl DecayRecord {
    /// `(|c0|, max_k |cos_k|, max_k |sin_k|)`.
    pub fn magnitudes(&self) -> [f64; 3] {
        let max_abs = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        [
            self.coeffs.c0().abs(),
            max_abs(self.coeffs.cos_coeffs()),
            max_abs(self.coeffs.sin_coeffs()),
        ]
    }

    pub fn rows(&self) -> Vec<CheckRow> {
        let offset = match self.kind {
            TrigKind::Cos => 1,
            TrigKind::Sin => 4,
        };
        let jf = self.j as f64;
        self.magnitudes()
            .iter()
            .zip(self.constants)
            .enumerate()
            .map(|(i, (v, c))| CheckRow {
                check: format!("decay_C{}", offset + i),
                p: Some(self.p.get()),
                n: self.n,
                j: Some(self.j),
                value: *v,
                bound: c / jf,
                pass: within(v * jf, c),
            })
            .collect()
    }
}

fn check_regime(order: Order, n: usize, j: usize) -> Result<()> {
    if j <= n {
        return Err(Error::OutOfRegime { n, j });
    }
    if order == Order::Third && n < 5 {
        return Err(Error::InvalidParameter(format!(
            "decay constants for p = 3 hold for n >= 5, got n = {n}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    Ok(())
}

pub fn regularizer_column(order: Order, n: usize, j: usize, kind: TrigKind) -> Result<DecayRecord> {
    check_regime(order, n, j)?;
    let coeffs = solve_analytic(order, &projected_image(order, n, j, kind)?);
    let c = decay_constants(order);
    let constants = match kind {
        TrigKind::Cos => [c[0], c[1], c[2]],
        TrigKind::Sin => [c[3], c[4], c[5]],
    };
    Ok(DecayRecord {
        p: order,
        n,
        j,
        kind,
        coeffs,
        constants,
    })
}

/// All six decay bounds for every `n` in `n_list` and `j ∈ n+1 ..= multiplier·n`.
pub fn check_decay(order: Order, n_list: &[usize], multiplier: usize) -> Result<CheckReport> {
    let cells: Vec<(usize, usize)> = n_list
        .iter()
        .flat_map(|&n| (n + 1..=multiplier * n).map(move |j| (n, j)))
        .collect();
    let per_cell = crate::par_map(&cells, |&(n, j)| -> Result<Vec<CheckRow>> {
        let mut rows = regularizer_column(order, n, j, TrigKind::Cos)?.rows();
        rows.extend(regularizer_column(order, n, j, TrigKind::Sin)?.rows());
        Ok(rows)
    });
    let mut report = CheckReport::default();
    for rows in per_cell {
        report.rows.extend(rows?);
    }
    Ok(report)
}

/// `A_n^† P_n A v` for `v` of any degree. The part of `v` in `X_n` goes
/// through the Galerkin matrix, the rest through the high-frequency images.
pub fn regularizer_apply(order: Order, n: usize, v: &TrigPoly) -> Result<TrigPoly> {
    let low = v.resized(n);
    let mut out = solve_analytic(order, &assemble_matrix(order, n).apply(&low)?);
    out = out.combine(1.0, &tail_apply(order, n, v)?, 1.0);
    Ok(out)
}

/// `K_n v = A_n^† P_n A (I − P_n) v`.
pub fn tail_apply(order: Order, n: usize, v: &TrigPoly) -> Result<TrigPoly> {
    let mut rhs = TrigPoly::zeros(n);
    for j in n + 1..=v.degree() {
        for (kind, a) in [
            (TrigKind::Cos, v.cos_coeff(j)),
            (TrigKind::Sin, v.sin_coeff(j)),
        ] {
            if a != 0.0 {
                rhs = rhs.combine(1.0, &projected_image(order, n, j, kind)?, a);
            }
        }
    }
    Ok(solve_analytic(order, &rhs))
}

/// Dense map from high-frequency coefficients `(a_{n+1}, b_{n+1}, …, a_J, b_J)`
/// to `X_n`, stored by columns.
struct TailMatrix {
    dim: usize,
    cols: Vec<Vec<f64>>,
}

impl TailMatrix {
    fn new(order: Order, n: usize, cutoff: usize) -> Result<Self> {
        let mut cols = Vec::with_capacity(2 * (cutoff - n));
        for j in n + 1..=cutoff {
            for kind in [TrigKind::Cos, TrigKind::Sin] {
                let image = projected_image(order, n, j, kind)?;
                cols.push(solve_analytic(order, &image).to_interleaved());
            }
        }
        Ok(Self {
            dim: 2 * n + 1,
            cols,
        })
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim];
        for (c, xi) in self.cols.iter().zip(x) {
            for (yi, ci) in y.iter_mut().zip(c) {
                *yi += ci * xi;
            }
        }
        y
    }

    fn apply_t(&self, y: &[f64]) -> Vec<f64> {
        self.cols
            .iter()
            .map(|c| c.iter().zip(y).map(|(a, b)| a * b).sum())
            .collect()
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let s = norm(&v);
        if s > 0.0 {
            return v.into_iter().map(|x| x / s).collect();
        }
    }
}

/// Lower estimates of `‖K_n‖` and `‖R_n‖` on the span of frequencies up to
/// `cutoff`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorEstimate {
    pub p: u32,
    pub n: usize,
    pub cutoff: usize,
    pub trials: usize,
    /// Best `‖K_n v‖` over random unit vectors alone.
    pub kappa_random: f64,
    /// After power-iteration refinement of the best random vector.
    pub kappa: f64,
    pub gamma_random: f64,
    pub gamma: f64,
    /// Upper bound on the norm of `K_n` restricted to frequencies above
    /// `cutoff`, from the decay constants.
    pub tail_bound: f64,
}

const POWER_STEPS: usize = 60;

fn best_of(
    trials: usize,
    dim_in: usize,
    rng: &mut ChaCha8Rng,
    apply: impl Fn(&[f64]) -> Vec<f64>,
    apply_t: impl Fn(&[f64]) -> Vec<f64>,
) -> (f64, f64) {
    let mut best = (0.0, Vec::new());
    for _ in 0..trials {
        let v = random_unit(rng, dim_in);
        let val = norm(&apply(&v));
        if val > best.0 {
            best = (val, v);
        }
    }
    let random = best.0;
    let mut refined = random;
    let mut v = best.1;
    for _ in 0..POWER_STEPS {
        let w = apply_t(&apply(&v));
        let s = norm(&w);
        if s == 0.0 {
            break;
        }
        v = w.into_iter().map(|x| x / s).collect();
        refined = refined.max(norm(&apply(&v)));
    }
    (random, refined)
}

/// Randomized lower estimates of `‖K_n‖` and `‖R_n‖` with frequencies
/// truncated at `100 n`.
pub fn estimate_operators(
    order: Order,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<OperatorEstimate> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidParameter(
            "n and trials must be positive".into(),
        ));
    }
    let cutoff = 100 * n;
    let tail = TailMatrix::new(order, n, cutoff)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (order.get() as u64) << 32 ^ n as u64);
    let (kappa_random, kappa) = best_of(
        trials,
        tail.cols.len(),
        &mut rng,
        |x| tail.apply(x),
        |y| tail.apply_t(y),
    );
    // R_n = [I | K] on X_n ⊕ high frequencies
    let d = tail.dim;
    let (gamma_random, gamma) = best_of(
        trials,
        d + tail.cols.len(),
        &mut rng,
        |x| {
            let mut y = tail.apply(&x[d..]);
            for (yi, xi) in y.iter_mut().zip(&x[..d]) {
                *yi += xi;
            }
            y
        },
        |y| {
            let mut out = y.to_vec();
            out.extend(tail.apply_t(y));
            out
        },
    );
    let c = decay_constants(order);
    let nf = n as f64;
    let tail_bound = ((c[0] * c[0] + c[3] * c[3])
        + nf * (c[1] * c[1] + c[4] * c[4])
        + nf * (c[2] * c[2] + c[5] * c[5]))
        .sqrt()
        / (cutoff as f64).sqrt();
    Ok(OperatorEstimate {
        p: order.get(),
        n,
        cutoff,
        trials,
        kappa_random,
        kappa,
        gamma_random,
        gamma,
        tail_bound,
    })
}

/// Lower estimate of `‖K_n‖`.
pub fn estimate_kappa(order: Order, n: usize, trials: usize) -> Result<f64> {
    Ok(estimate_operators(order, n, trials, 0)?.kappa)
}

pub fn check_operators(
    order: Order,
    n_list: &[usize],
    trials: usize,
    seed: u64,
) -> Result<CheckReport> {
    let consts = builtin_constants(order);
    let estimates = crate::par_map(n_list, |&n| estimate_operators(order, n, trials, seed));
    let mut report = CheckReport::default();
    for e in estimates {
        let e = e?;
        report.rows.push(CheckRow {
            check: "kappa".into(),
            p: Some(e.p),
            n: e.n,
            j: Some(e.cutoff),
            value: e.kappa,
            bound: consts.kappa,
            pass: e.kappa <= consts.kappa,
        });
        report.rows.push(CheckRow {
            check: "gamma".into(),
            p: Some(e.p),
            n: e.n,
            j: Some(e.cutoff),
            value: e.gamma,
            bound: consts.gamma,
            pass: e.gamma <= consts.gamma,
        });
    }
    Ok(report)
}

/// `1/σ_min(M_n^{(p)}) ≤ C n^p`.
pub fn check_norm_bound(order: Order, n_list: &[usize]) -> Result<CheckReport> {
    let c = builtin_constants(order).c;
    let values = crate::par_map(n_list, |&n| inverse_operator_norm(order, n));
    let mut report = CheckReport::default();
    for (&n, v) in n_list.iter().zip(values) {
        let v = v?;
        let bound = c * (n as f64).powi(order.get() as i32);
        report.rows.push(CheckRow {
            check: "inverse_norm".into(),
            p: Some(order.get()),
            n,
            j: None,
            value: v,
            bound,
            pass: v <= bound,
        });
    }
    Ok(report)
}

/// Ranges of `L_n⁻¹`, `K_n`, `F_n` (all `n`) and `T_n` (`n ≥ 5`).
pub fn check_solver_constants(n_list: &[usize]) -> CheckReport {
    let mut report = CheckReport::default();
    for &n in n_list {
        let c = solver_constants(n);
        let nf = n as f64;
        let m = nf * (2.0 * nf + 1.0);
        let mut push = |check: &str, value: f64, lo: f64, hi: f64| {
            let pass = value >= lo && value <= hi;
            // report the violated side, or the upper end when inside
            let bound = if value < lo { lo } else { hi };
            report.rows.push(CheckRow {
                check: check.into(),
                p: None,
                n,
                j: None,
                value,
                bound,
                pass,
            });
        };
        push("inv_L_range", 1.0 / c.l, 10.0 * nf, 36.0 * nf);
        push("K_range", c.k, -2.0 / nf, -0.5 / nf);
        push("F_range", c.f, SQRT_2 / m, 4.0 * SQRT_2 / m);
        if n >= 5 {
            push("T_range", c.t, 1.0 / (396.0 * m), 3.0 / (40.0 * m));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn first_order_columns() {
        let r = regularizer_column(Order::First, 3, 7, TrigKind::Cos).unwrap();
        assert_eq!(r.coeffs.l2_norm(), 0.0);
        assert_eq!(r.constants, [0.0; 3]);

        let r = regularizer_column(Order::First, 2, 9, TrigKind::Sin).unwrap();
        assert_relative_eq!(r.coeffs.c0(), SQRT_2 / (PI * 9.0), max_relative = 1e-14);
        for k in 1..=2 {
            assert_relative_eq!(
                r.coeffs.cos_coeff(k),
                2.0 / (PI * 9.0),
                max_relative = 1e-14
            );
            assert_eq!(r.coeffs.sin_coeff(k), 0.0);
        }
    }

    #[test]
    fn second_order_c0_bound() {
        let r = regularizer_column(Order::Second, 4, 6, TrigKind::Cos).unwrap();
        assert!(r.coeffs.c0().abs() <= SQRT_2 / 6.0);
        assert!(r.rows().iter().all(|row| row.pass));
    }

    #[test]
    fn regime_errors() {
        assert!(regularizer_column(Order::Second, 4, 4, TrigKind::Cos).is_err());
        assert!(regularizer_column(Order::Third, 4, 9, TrigKind::Sin).is_err());
        assert!(regularizer_column(Order::Third, 5, 9, TrigKind::Sin).is_ok());
    }

    #[test]
    fn small_decay_sweeps() {
        let n: Vec<usize> = (1..=6).collect();
        assert!(check_decay(Order::First, &n, 10).unwrap().pass());
        assert!(check_decay(Order::Second, &n, 10).unwrap().pass());
        assert!(check_decay(Order::Third, &[5, 6], 10).unwrap().pass());
    }

    #[test]
    fn tail_vanishes_on_low_frequencies() {
        let v = TrigPoly::new(0.3, vec![1.0, -2.0, 0.5], vec![0.0, 1.0, 4.0]).unwrap();
        for p in Order::ALL {
            assert_eq!(tail_apply(p, 3, &v).unwrap().l2_norm(), 0.0);
            assert!(regularizer_apply(p, 3, &v).unwrap().distance(&v) < 1e-10);
        }
    }

    #[test]
    fn kappa_small() {
        let e = estimate_operators(Order::First, 10, 50, 1).unwrap();
        assert!(e.kappa >= e.kappa_random);
        assert!(e.kappa <= 0.7801);
        assert!(e.gamma <= 1.7801 && e.gamma >= 1.0);
        assert!(estimate_kappa(Order::Second, 10, 50).unwrap() <= 7.3729);
    }

    #[test]
    fn solver_constants_small() {
        let r = check_solver_constants(&[1, 2, 5, 10]);
        assert!(r.pass());
        let inv_l1 = &r.rows[0];
        assert_relative_eq!(inv_l1.value, 2.0 * PI * PI, max_relative = 1e-13);
        assert_relative_eq!(r.rows[1].value, -1.0, max_relative = 1e-13);
        assert!(r
            .rows
            .iter()
            .any(|row| row.check == "T_range" && row.n == 5));
        assert!(!r
            .rows
            .iter()
            .any(|row| row.check == "T_range" && row.n == 2));
    }

    #[test]
    fn report_csv() {
        let csv = check_solver_constants(&[1]).to_csv().unwrap();
        assert!(csv.starts_with("check,p,n,j,value,bound,pass\n"));
        assert_eq!(csv.lines().count(), 4);
    }
}
