use std::f64::consts::{PI, TAU};
use std::io::Read;

use super::poly::TrigPoly;
use crate::error::{Error, Result};

/// Samples on the closed uniform grid `t_i = 2πi/N`, `i = 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    samples: Vec<f64>,
}

impl SampledSignal {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidSignal(
                "a sampled signal needs at least two grid points".into(),
            ));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSignal("non-finite sample".into()));
        }
        Ok(Self { samples })
    }

    pub fn from_fn(intervals: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let h = TAU / intervals as f64;
        Self::new((0..=intervals).map(|i| f(i as f64 * h)).collect())
    }

    /// Reads a two-column `t,value` CSV (header optional). The abscissae must be
    /// the uniform grid from 0 to 2π inclusive, to within 0.1% of the spacing.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let mut ts = Vec::new();
        let mut vs = Vec::new();
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec?;
            if rec.len() != 2 {
                return Err(Error::InvalidSignal(format!(
                    "row {row}: expected 2 columns, found {}",
                    rec.len()
                )));
            }
            let parsed = (rec[0].parse::<f64>(), rec[1].parse::<f64>());
            match parsed {
                (Ok(t), Ok(v)) => {
                    ts.push(t);
                    vs.push(v);
                }
                // header line
                _ if row == 0 => continue,
                _ => {
                    return Err(Error::InvalidSignal(format!(
                        "row {row}: cannot parse `{},{}`",
                        &rec[0], &rec[1]
                    )))
                }
            }
        }
        if ts.len() < 2 {
            return Err(Error::InvalidSignal("fewer than two samples".into()));
        }
        let intervals = ts.len() - 1;
        let h = TAU / intervals as f64;
        let tol = 1e-3 * h;
        for (i, t) in ts.iter().enumerate() {
            let expected = i as f64 * h;
            if (t - expected).abs() > tol {
                return Err(Error::NonUniformGrid {
                    row: i,
                    found: *t,
                    expected,
                });
            }
        }
        Self::new(vs)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Number of grid intervals `N`.
    pub fn intervals(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn node(&self, i: usize) -> f64 {
        TAU * i as f64 / self.intervals() as f64
    }

    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> Self {
        Self {
            samples: self
                .samples
                .iter()
                .enumerate()
                .map(|(i, v)| f(self.node(i), *v))
                .collect(),
        }
    }
}

/// Composite-trapezoid approximation of `P_n` applied to sampled data.
pub fn fourier_coeffs_quadrature(sig: &SampledSignal, n: usize) -> Result<TrigPoly> {
    let intervals = sig.intervals();
    if intervals < 2 * n + 1 {
        return Err(Error::InsufficientResolution {
            samples: intervals,
            degree: n,
            required: 2 * n + 1,
        });
    }
    let h = TAU / intervals as f64;
    let weighted: Vec<(f64, f64)> = sig
        .samples
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let w = if i == 0 || i == intervals { 0.5 * h } else { h };
            (sig.node(i), w * v)
        })
        .collect();
    let mut out = TrigPoly::zeros(n);
    out.set_c0(weighted.iter().map(|(_, wv)| wv).sum::<f64>() / TAU.sqrt());
    let inv = 1.0 / PI.sqrt();
    for k in 1..=n {
        let kf = k as f64;
        let (mut c, mut s) = (0.0, 0.0);
        for (t, wv) in &weighted {
            let (sk, ck) = (kf * t).sin_cos();
            c += wv * ck;
            s += wv * sk;
        }
        out.cos_coeffs_mut()[k - 1] = c * inv;
        out.sin_coeffs_mut()[k - 1] = s * inv;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos_and_sin_modes() {
        let c =
            fourier_coeffs_quadrature(&SampledSignal::from_fn(4096, f64::cos).unwrap(), 1).unwrap();
        assert!((c.cos_coeff(1) - PI.sqrt()).abs() < 1e-8);
        assert!(c.c0().abs() < 1e-8 && c.sin_coeff(1).abs() < 1e-8);

        let s = SampledSignal::from_fn(4096, |t| (3.0 * t).sin()).unwrap();
        let c = fourier_coeffs_quadrature(&s, 5).unwrap();
        for k in 1..=5 {
            let want = if k == 3 { PI.sqrt() } else { 0.0 };
            assert!((c.sin_coeff(k) - want).abs() < 1e-8);
            assert!(c.cos_coeff(k).abs() < 1e-8);
        }
    }

    #[test]
    fn zero_samples() {
        let z = SampledSignal::from_fn(64, |_| 0.0).unwrap();
        let c = fourier_coeffs_quadrature(&z, 10).unwrap();
        assert_eq!(c.l2_norm(), 0.0);
    }

    #[test]
    fn resolution_check() {
        let z = SampledSignal::from_fn(20, |_| 0.0).unwrap();
        assert!(fourier_coeffs_quadrature(&z, 10).is_err());
        assert!(fourier_coeffs_quadrature(&z, 9).is_ok());
    }

    #[test]
    fn csv_round_trip_and_rejection() {
        let mut text = String::from("t,value\n");
        for i in 0..=16 {
            let t = TAU * i as f64 / 16.0;
            text.push_str(&format!("{t},{}\n", t.sin()));
        }
        let sig = SampledSignal::from_csv(text.as_bytes()).unwrap();
        assert_eq!(sig.intervals(), 16);

        let bad = "0,1\n1,2\n6.283185307179586,3\n";
        match SampledSignal::from_csv(bad.as_bytes()) {
            Err(Error::NonUniformGrid { row: 1, .. }) => {}
            other => panic!("expected non-uniform grid error, got {other:?}"),
        }
        assert!(SampledSignal::from_csv("0,1,2\n".as_bytes()).is_err());
    }
}
