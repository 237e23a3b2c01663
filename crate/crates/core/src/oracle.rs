//! Brute-force reference solutions: dense LU with partial pivoting and
//! singular values of the Galerkin matrix. Nothing here uses the
//! closed-form inverse.
//!
//! The basis is orthonormal, so Euclidean norms of coefficient vectors are
//! L² norms and matrix 2-norms are operator norms on `X_n`.

use nalgebra::{DMatrix, DVector};

use crate::basis::TrigPoly;
use crate::error::{Error, Result};
use crate::galerkin::{assemble_matrix, GalerkinMatrix, Order};

const MAX_CONDITION: f64 = 1e14;
const SVD_MAX_DIM: usize = 401;

fn to_dmatrix(m: &GalerkinMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.dim(), m.dim(), m.entries())
}

fn one_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn solve_dense(order: Order, rhs: &TrigPoly) -> Result<TrigPoly> {
    let n = rhs.degree();
    let a = to_dmatrix(&assemble_matrix(order, n));
    let norm_a = one_norm(&a);
    let lu = a.lu();
    let inv = lu.try_inverse().ok_or(Error::IllConditioned {
        n,
        condition: f64::INFINITY,
    })?;
    let condition = norm_a * one_norm(&inv);
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(Error::IllConditioned { n, condition });
    }
    let b = DVector::from_vec(rhs.to_interleaved());
    let x = lu.solve(&b).ok_or(Error::IllConditioned { n, condition })?;
    TrigPoly::from_interleaved(x.as_slice())
}

/// Smallest singular value of `M_n^{(p)}`.
pub fn sigma_min(order: Order, n: usize) -> Result<f64> {
    let a = to_dmatrix(&assemble_matrix(order, n));
    if a.nrows() <= SVD_MAX_DIM {
        let sv = a
            .try_svd(false, false, f64::EPSILON, 10_000)
            .ok_or_else(|| Error::NumericFailure(format!("SVD did not converge at n = {n}")))?
            .singular_values;
        Ok(sv.iter().copied().fold(f64::INFINITY, f64::min))
    } else {
        inverse_iteration(&a, n)
    }
}

// Power iteration on (AᵀA)⁻¹ through one LU of A.
fn inverse_iteration(a: &DMatrix<f64>, n: usize) -> Result<f64> {
    let lu = a.clone().lu();
    let lut = a.transpose().lu();
    let dim = a.nrows();
    let mut v = DVector::from_fn(dim, |i, _| 1.0 + (i as f64 * 0.618_034).fract());
    v /= v.norm();
    let mut est = 0.0;
    for _ in 0..500 {
        let w = lu
            .solve(&v)
            .and_then(|w| lut.solve(&w))
            .ok_or(Error::IllConditioned {
                n,
                condition: f64::INFINITY,
            })?;
        let norm = w.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NumericFailure(format!(
                "inverse iteration broke down at n = {n}"
            )));
        }
        v = w / norm;
        if (norm - est).abs() <= 1e-13 * norm {
            est = norm;
            break;
        }
        est = norm;
    }
    Ok(1.0 / est.sqrt())
}

/// `‖(M_n^{(p)})⁻¹‖₂ = 1/σ_min`.
pub fn inverse_operator_norm(order: Order, n: usize) -> Result<f64> {
    Ok(1.0 / sigma_min(order, n)?)
}

/// Largest singular value of a dense row-major matrix.
pub fn spectral_norm(rows: usize, cols: usize, entries: &[f64]) -> Result<f64> {
    let a = DMatrix::from_row_slice(rows, cols, entries);
    let sv = a
        .try_svd(false, false, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::NumericFailure("SVD did not converge".into()))?
        .singular_values;
    Ok(sv.iter().copied().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galerkin::solve_analytic;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn zero_and_sin_rhs() {
        assert_eq!(
            solve_dense(Order::Third, &TrigPoly::zeros(3))
                .unwrap()
                .l2_norm(),
            0.0
        );
        let rhs = TrigPoly::new(0.0, vec![0.0, 0.0], vec![PI.sqrt(), 0.0]).unwrap();
        let x = solve_dense(Order::First, &rhs).unwrap();
        assert_relative_eq!(x.cos_coeff(1), PI.sqrt(), epsilon = 1e-13);
        let rest = x.sub(&TrigPoly::new(0.0, vec![PI.sqrt(), 0.0], vec![0.0, 0.0]).unwrap());
        assert!(rest.l2_norm() < 1e-13);
    }

    #[test]
    fn residual_small() {
        for p in Order::ALL {
            let rhs = TrigPoly::from_interleaved(
                &(0..21)
                    .map(|i| ((i * 7 % 11) as f64 - 5.0) / 5.0)
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            let x = solve_dense(p, &rhs).unwrap();
            let back = assemble_matrix(p, 10).apply(&x).unwrap();
            assert!(back.distance(&rhs) <= 1e-10 * rhs.l2_norm());
            let y = solve_analytic(p, &rhs);
            assert!(x.distance(&y) <= 1e-9 * x.l2_norm());
        }
    }

    #[test]
    fn norm_examples() {
        let v = inverse_operator_norm(Order::First, 1).unwrap();
        assert!(v > 0.0 && v <= 3f64.sqrt());
        let m = assemble_matrix(Order::First, 1);
        assert!(v >= 1.0 / spectral_norm(3, 3, m.entries()).unwrap());
        assert!(inverse_operator_norm(Order::Second, 10).unwrap() <= 11.8040 * 100.0);
    }

    #[test]
    fn inverse_iteration_matches_svd() {
        for p in Order::ALL {
            let a = to_dmatrix(&assemble_matrix(p, 30));
            let svd = sigma_min(p, 30).unwrap();
            let it = inverse_iteration(&a, 30).unwrap();
            assert_relative_eq!(svd, it, max_relative = 1e-6);
        }
    }
}
