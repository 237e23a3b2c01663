use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{add_noise, relative_error, CatalogEntry};
use crate::basis::{fourier_coeffs_exact, sobolev_per_norm, ExactSignal, Polynomial, TrigTerm};
use crate::error::{Error, Result};
use crate::galerkin::Order;
use crate::regularize::{
    builtin_constants, choose_n, differentiate, DiffProblem, ParameterRule, Signal,
};

/// `‖|x − π|‖_{H¹_per}` with coefficients summed up to `cutoff`.
pub fn hat_sobolev_norm(cutoff: usize) -> Result<f64> {
    let hat = super::catalog("ex8_2")?.derivative;
    Ok(sobolev_per_norm(&fourier_coeffs_exact(&hat, cutoff)?, 1.0))
}

/// Where the noise frequency sits relative to the selected degree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NoisePlacement {
    /// Frequency `n`: the noise passes the projection in full.
    AtDegree,
    /// Frequency `n + 1`: the projection removes it.
    AboveDegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatePoint {
    pub delta: f64,
    pub n: usize,
    pub noise_freq: u32,
    pub r: f64,
}

/// Runs the Sobolev-prior rule over `deltas` on an entry with exact initial
/// data.
pub fn rate_study(
    entry: &CatalogEntry,
    l: f64,
    norm: f64,
    deltas: &[f64],
    placement: NoisePlacement,
) -> Result<Vec<RatePoint>> {
    let rule = ParameterRule::SobolevPrior {
        l,
        norm,
        noisy_initial: false,
    };
    let consts = builtin_constants(entry.p);
    deltas
        .iter()
        .map(|&delta| {
            let n = choose_n(&rule, delta, &consts)?;
            let noise_freq = match placement {
                NoisePlacement::AtDegree => n,
                NoisePlacement::AboveDegree => n + 1,
            } as u32;
            let noisy = add_noise(&entry.y, delta, noise_freq)?;
            let problem = DiffProblem::new(
                entry.p,
                Signal::Exact(noisy),
                entry.initial_data.clone(),
                delta,
                0.0,
            )?;
            let out = differentiate(&problem, &rule)?;
            Ok(RatePoint {
                delta,
                n,
                noise_freq,
                r: relative_error(&out.solution, &entry.derivative)?,
            })
        })
        .collect()
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 || points.iter().any(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(Error::InvalidParameter(
            "slope needs at least two points with positive coordinates".into(),
        ));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// Outcome of one band-limited recovery trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FilteringTrial {
    pub p: u32,
    pub band: usize,
    pub noise_freq: u32,
    pub r: f64,
}

/// Random derivative with frequencies up to `N ≤ 10`, integrated `p` times
/// from 0, noise `0.01 sin(kx)/√π` with `k > N`, rule `band:N,N`.
pub fn good_filtering_trial(order: Order, seed: u64) -> Result<FilteringTrial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let band: u32 = rng.gen_range(1..=10);
    let mut terms = Vec::new();
    for k in 1..=band {
        terms.push(TrigTerm::cos(rng.gen_range(-1.0..=1.0), k));
        terms.push(TrigTerm::sin(rng.gen_range(-1.0..=1.0), k));
    }
    let derivative =
        ExactSignal::trig(terms)?.add_polynomial(&Polynomial::constant(rng.gen_range(-1.0..=1.0)));
    let mut y = derivative.clone();
    for _ in 0..order.get() {
        y = y.integral_from_zero();
    }
    let noise_freq = band + rng.gen_range(1..=10);
    let noisy = add_noise(&y, 0.01, noise_freq)?;
    let problem = DiffProblem::new(
        order,
        Signal::Exact(noisy),
        vec![0.0; order.get() as usize],
        0.01,
        0.0,
    )?;
    let band = band as usize;
    let out = differentiate(&problem, &ParameterRule::Bandlimited(band, band))?;
    Ok(FilteringTrial {
        p: order.get(),
        band,
        noise_freq,
        r: relative_error(&out.solution, &derivative)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [1e-1f64, 1e-2, 1e-3]
            .iter()
            .map(|&d| (d, 3.0 * d.powf(0.5)))
            .collect();
        assert!((log_log_slope(&pts).unwrap() - 0.5).abs() < 1e-12);
        assert!(log_log_slope(&pts[..1]).is_err());
    }

    #[test]
    fn filtering_is_exact() {
        for p in Order::ALL {
            let t = good_filtering_trial(p, 7).unwrap();
            assert!(t.r <= 1e-9, "{t:?}");
        }
    }
}
