use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of `X_n`, the span of the orthonormal system
/// `1/√(2π), cos t/√π, sin t/√π, …, cos nt/√π, sin nt/√π` on `(0, 2π)`.
///
/// Coefficients are stored relative to that orthonormal basis, so the
/// Euclidean norm of the coefficient vector is the L² norm of the function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    c0: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigPoly {
    pub fn zeros(degree: usize) -> Self {
        Self {
            c0: 0.0,
            cos: vec![0.0; degree],
            sin: vec![0.0; degree],
        }
    }

    pub fn new(c0: f64, cos: Vec<f64>, sin: Vec<f64>) -> Result<Self> {
        if cos.len() != sin.len() {
            return Err(Error::DegreeMismatch {
                expected: cos.len(),
                found: sin.len(),
            });
        }
        if !c0.is_finite() || cos.iter().chain(&sin).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "trigonometric coefficients must be finite".into(),
            ));
        }
        Ok(Self { c0, cos, sin })
    }

    /// Builds a polynomial from the interleaved basis ordering
    /// `(c0, cos 1, sin 1, …, cos n, sin n)` used by the Galerkin matrices.
    pub fn from_interleaved(v: &[f64]) -> Result<Self> {
        if v.len() % 2 != 1 {
            return Err(Error::InvalidParameter(format!(
                "interleaved coefficient vector must have odd length, got {}",
                v.len()
            )));
        }
        let n = v.len() / 2;
        let cos = (1..=n).map(|k| v[2 * k - 1]).collect();
        let sin = (1..=n).map(|k| v[2 * k]).collect();
        Self::new(v[0], cos, sin)
    }

    pub fn to_interleaved(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dim());
        out.push(self.c0);
        for (c, s) in self.cos.iter().zip(&self.sin) {
            out.push(*c);
            out.push(*s);
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.cos.len()
    }

    /// Dimension `2n + 1` of `X_n`.
    pub fn dim(&self) -> usize {
        2 * self.degree() + 1
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn set_c0(&mut self, v: f64) {
        self.c0 = v;
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin
    }

    pub fn cos_coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.cos
    }

    pub fn sin_coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.sin
    }

    /// Coefficient of `cos kt/√π`, 1-based; zero above the degree.
    pub fn cos_coeff(&self, k: usize) -> f64 {
        assert!(k >= 1, "cosine coefficients are indexed from 1");
        self.cos.get(k - 1).copied().unwrap_or(0.0)
    }

    /// Coefficient of `sin kt/√π`, 1-based; zero above the degree.
    pub fn sin_coeff(&self, k: usize) -> f64 {
        assert!(k >= 1, "sine coefficients are indexed from 1");
        self.sin.get(k - 1).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut acc = self.c0 / TAU.sqrt();
        let inv = 1.0 / PI.sqrt();
        for (k, (c, s)) in self.cos.iter().zip(&self.sin).enumerate() {
            let (sk, ck) = ((k + 1) as f64 * t).sin_cos();
            acc += inv * (c * ck + s * sk);
        }
        acc
    }

    pub fn norm_squared(&self) -> f64 {
        self.c0 * self.c0
            + self.cos.iter().map(|v| v * v).sum::<f64>()
            + self.sin.iter().map(|v| v * v).sum::<f64>()
    }

    /// L² norm on `(0, 2π)` (Parseval).
    pub fn l2_norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Zero-pads or truncates to `degree`; truncation is the projection `P_degree`.
    pub fn resized(&self, degree: usize) -> Self {
        let mut cos = self.cos.clone();
        let mut sin = self.sin.clone();
        cos.resize(degree, 0.0);
        sin.resize(degree, 0.0);
        Self {
            c0: self.c0,
            cos,
            sin,
        }
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self {
            c0: a * self.c0,
            cos: self.cos.iter().map(|v| a * v).collect(),
            sin: self.sin.iter().map(|v| a * v).collect(),
        }
    }

    /// `a·self + b·other`, at the larger of the two degrees.
    pub fn combine(&self, a: f64, other: &TrigPoly, b: f64) -> Self {
        let n = self.degree().max(other.degree());
        let lhs = self.resized(n);
        let rhs = other.resized(n);
        Self {
            c0: a * lhs.c0 + b * rhs.c0,
            cos: lhs
                .cos
                .iter()
                .zip(&rhs.cos)
                .map(|(x, y)| a * x + b * y)
                .collect(),
            sin: lhs
                .sin
                .iter()
                .zip(&rhs.sin)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        }
    }

    pub fn sub(&self, other: &TrigPoly) -> Self {
        self.combine(1.0, other, -1.0)
    }

    pub fn distance(&self, other: &TrigPoly) -> f64 {
        self.sub(other).l2_norm()
    }
}

/// Periodic Sobolev norm `√(ξ_0² + Σ_{k≤M} (1+k²)^l (ξ_k² + η_k²))`, with the
/// cutoff `M` taken as the degree of `coeffs`.
pub fn sobolev_per_norm(coeffs: &TrigPoly, l: f64) -> f64 {
    let mut acc = 0.0;
    // smallest terms first
    for k in (1..=coeffs.degree()).rev() {
        let kf = k as f64;
        let w = (1.0 + kf * kf).powf(l);
        let c = coeffs.cos[k - 1];
        let s = coeffs.sin[k - 1];
        acc += w * (c * c + s * s);
    }
    (coeffs.c0 * coeffs.c0 + acc).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn eval_basis_elements() {
        assert_eq!(TrigPoly::zeros(4).eval(1.3), 0.0);
        let c = TrigPoly::new(TAU.sqrt(), vec![], vec![]).unwrap();
        assert_relative_eq!(c.eval(1.0), 1.0, epsilon = 1e-15);
        let cos1 = TrigPoly::new(0.0, vec![PI.sqrt()], vec![0.0]).unwrap();
        assert_relative_eq!(cos1.eval(0.0), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn sobolev_examples() {
        let xi1 = TrigPoly::new(0.0, vec![1.0], vec![0.0]).unwrap();
        assert_relative_eq!(sobolev_per_norm(&xi1, 1.0), 2f64.sqrt(), epsilon = 1e-15);
        let c = TrigPoly::new(3.0, vec![0.0; 5], vec![0.0; 5]).unwrap();
        assert_eq!(sobolev_per_norm(&c, 0.0), 3.0);
        assert_eq!(sobolev_per_norm(&c, 7.5), 3.0);
        let eta2 = TrigPoly::new(0.0, vec![0.0, 0.0], vec![0.0, 1.0]).unwrap();
        assert_relative_eq!(sobolev_per_norm(&eta2, 2.0), 5.0, epsilon = 1e-14);
    }

    #[test]
    fn interleaved_layout() {
        let p = TrigPoly::from_interleaved(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(p.cos_coeffs(), &[2.0, 4.0]);
        assert_eq!(p.sin_coeffs(), &[3.0, 5.0]);
        assert_eq!(p.to_interleaved(), vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!(TrigPoly::from_interleaved(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn rejects_mismatched_and_nonfinite() {
        assert!(TrigPoly::new(0.0, vec![1.0], vec![]).is_err());
        assert!(TrigPoly::new(f64::NAN, vec![], vec![]).is_err());
    }

    #[test]
    fn combine_pads_to_larger_degree() {
        let a = TrigPoly::new(1.0, vec![1.0], vec![2.0]).unwrap();
        let b = TrigPoly::new(1.0, vec![0.0, 3.0], vec![0.0, 4.0]).unwrap();
        let d = b.sub(&a);
        assert_eq!(d.to_interleaved(), vec![0.0, -1.0, -2.0, 3.0, 4.0]);
        assert_relative_eq!(a.distance(&b), 30f64.sqrt());
    }
}
