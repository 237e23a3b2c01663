//! The differentiation pipeline: Taylor truncation of the initial data,
//! choice of the truncation degree `n`, and the Galerkin solve.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::basis::{
    fourier_coeffs_exact, fourier_coeffs_quadrature, ExactSignal, Polynomial, SampledSignal,
    TrigPoly,
};
use crate::error::{Error, Result};
use crate::galerkin::{solve_analytic, Order};

/// Largest truncation degree a rule may select.
pub const MAX_DEGREE: usize = 1_000_000;

/// Constants of the a priori error estimate for one order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    pub p: Order,
    /// `‖A_n^†‖ ≤ C n^p`
    pub c: f64,
    pub kappa: f64,
    /// `1 + κ`
    pub gamma: f64,
    /// `Σ_{k<p} ‖x^k‖/k!`
    pub delta_p: f64,
    /// `(Δ_p + 1) C`
    pub c_delta: f64,
}

/// `‖x^k‖_{L²(0,2π)} = √((2π)^{2k+1}/(2k+1))`.
pub fn monomial_norm(k: u32) -> f64 {
    (TAU.powi(2 * k as i32 + 1) / (2 * k + 1) as f64).sqrt()
}

pub fn builtin_constants(p: Order) -> BoundConstants {
    let (c, kappa) = match p {
        Order::First => (3f64.sqrt(), 0.7801),
        Order::Second => (11.8040, 7.3729),
        Order::Third => (345.0754, 74.8198),
    };
    let mut fact = 1.0;
    let mut delta_p = 0.0;
    for k in 0..p.get() {
        if k > 0 {
            fact *= k as f64;
        }
        delta_p += monomial_norm(k) / fact;
    }
    BoundConstants {
        p,
        c,
        kappa,
        gamma: 1.0 + kappa,
        delta_p,
        c_delta: (delta_p + 1.0) * c,
    }
}

/// `Σ_k Λ_k x^k / k!`.
pub fn taylor_polynomial(initial_data: &[f64]) -> Polynomial {
    let mut fact = 1.0;
    let coeffs = initial_data
        .iter()
        .enumerate()
        .map(|(k, v)| {
            if k > 0 {
                fact *= k as f64;
            }
            v / fact
        })
        .collect();
    Polynomial::new(coeffs)
}

fn check_initial(order: Order, initial_data: &[f64]) -> Result<()> {
    if initial_data.len() != order.get() as usize {
        return Err(Error::InvalidParameter(format!(
            "order {order} needs {order} initial values, got {}",
            initial_data.len()
        )));
    }
    if initial_data.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("non-finite initial value".into()));
    }
    Ok(())
}

/// `sig − Σ Λ_k x^k/k!`, subtracted on every piece.
pub fn taylor_truncate(
    sig: &ExactSignal,
    initial_data: &[f64],
    order: Order,
) -> Result<ExactSignal> {
    check_initial(order, initial_data)?;
    let taylor = taylor_polynomial(initial_data);
    Ok(sig.add_polynomial(&Polynomial::new(
        taylor.coeffs().iter().map(|c| -c).collect(),
    )))
}

/// Pointwise version of [`taylor_truncate`] for sampled data.
pub fn taylor_truncate_sampled(
    sig: &SampledSignal,
    initial_data: &[f64],
    order: Order,
) -> Result<SampledSignal> {
    check_initial(order, initial_data)?;
    let taylor = taylor_polynomial(initial_data);
    Ok(sig.map(|t, v| v - taylor.eval(t)))
}

/// Strategy for the truncation degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParameterRule {
    Fixed(usize),
    /// `n = κ δ^{a − 1/p}`
    NoPrior {
        a: f64,
        kappa: f64,
    },
    /// Balances the noise and approximation terms for `y^{(p)} ∈ H^l_per`.
    SobolevPrior {
        l: f64,
        norm: f64,
        noisy_initial: bool,
    },
    /// `n = max(N1, N2)` for band-limited derivative and initial-data terms.
    Bandlimited(usize, usize),
}

impl fmt::Display for ParameterRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParameterRule::Fixed(n) => write!(f, "fixed:{n}"),
            ParameterRule::NoPrior { a, kappa } => write!(f, "noprior:{a},{kappa}"),
            ParameterRule::SobolevPrior {
                l,
                norm,
                noisy_initial,
            } => {
                write!(f, "sobolev:{l},{norm:?}")?;
                if *noisy_initial {
                    write!(f, ",noisy")?;
                }
                Ok(())
            }
            ParameterRule::Bandlimited(a, b) => write!(f, "band:{a},{b}"),
        }
    }
}

impl FromStr for ParameterRule {
    type Err = Error;

    /// `fixed:N`, `noprior:a,kappa`, `sobolev:l,norm[,noisy]` or `band:N1,N2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse rule `{s}`"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let args: Vec<&str> = args.split(',').map(str::trim).collect();
        let num = |i: usize| -> Result<f64> {
            args.get(i)
                .and_then(|a| a.parse::<f64>().ok())
                .filter(|v| v.is_finite())
                .ok_or_else(bad)
        };
        let int = |i: usize| -> Result<usize> {
            args.get(i)
                .and_then(|a| a.parse::<usize>().ok())
                .ok_or_else(bad)
        };
        let rule = match (kind.trim(), args.len()) {
            ("fixed", 1) => ParameterRule::Fixed(int(0)?),
            ("noprior", 2) => ParameterRule::NoPrior {
                a: num(0)?,
                kappa: num(1)?,
            },
            ("sobolev", 2) | ("sobolev", 3) => {
                let noisy_initial = match args.get(2) {
                    None => false,
                    Some(&"noisy") => true,
                    Some(_) => return Err(bad()),
                };
                ParameterRule::SobolevPrior {
                    l: num(0)?,
                    norm: num(1)?,
                    noisy_initial,
                }
            }
            ("band", 2) => ParameterRule::Bandlimited(int(0)?, int(1)?),
            _ => return Err(bad()),
        };
        Ok(rule)
    }
}

fn round_degree(x: f64) -> Result<usize> {
    if !x.is_finite() || x > MAX_DEGREE as f64 {
        return Err(Error::InvalidParameter(format!(
            "selected degree {x} exceeds the supported maximum {MAX_DEGREE}"
        )));
    }
    // f64::round is half away from zero
    Ok((x.round() as usize).max(1))
}

fn positive_delta(delta: f64) -> Result<f64> {
    if delta > 0.0 && delta.is_finite() {
        Ok(delta)
    } else {
        Err(Error::InvalidParameter(format!(
            "rule needs a positive noise level, got δ = {delta}"
        )))
    }
}

pub fn choose_n(rule: &ParameterRule, delta: f64, consts: &BoundConstants) -> Result<usize> {
    let p = consts.p.get() as f64;
    match *rule {
        ParameterRule::Fixed(n) => Ok(n.max(1)),
        ParameterRule::Bandlimited(n1, n2) => Ok(n1.max(n2).max(1)),
        ParameterRule::NoPrior { a, kappa } => {
            if !(a > 0.0 && a < 1.0 / p) {
                return Err(Error::InvalidExponent {
                    a,
                    p: consts.p.get(),
                });
            }
            if !(kappa > 0.0 && kappa.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "κ must be positive, got {kappa}"
                )));
            }
            round_degree(kappa * positive_delta(delta)?.powf(a - 1.0 / p))
        }
        ParameterRule::SobolevPrior {
            l,
            norm,
            noisy_initial,
        } => {
            if !(l > 0.0 && norm > 0.0 && l.is_finite() && norm.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "Sobolev prior needs l > 0 and norm > 0, got l = {l}, norm = {norm}"
                )));
            }
            let c = if noisy_initial {
                consts.c_delta
            } else {
                consts.c
            };
            let e = 1.0 / (l + p);
            let base = l * (consts.gamma + 1.0) * norm / (p * c);
            round_degree(base.powf(e) * positive_delta(delta)?.powf(-e))
        }
    }
}

/// Noisy data `y^δ`.
#[derive(Debug, Clone, PartialEq)]
pub enum Signal {
    Exact(ExactSignal),
    Sampled(SampledSignal),
}

/// Smoothness prior `‖y^{(p)}‖_{H^l_per} ≤ norm`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SobolevPrior {
    pub l: f64,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffProblem {
    pub order: Order,
    pub signal: Signal,
    /// `Λ_0(0), …, Λ_{p−1}(0)`
    pub initial_data: Vec<f64>,
    pub delta: f64,
    pub delta_i: f64,
    /// Used for the error bound when the rule itself carries no prior.
    pub prior: Option<SobolevPrior>,
}

impl DiffProblem {
    pub fn new(
        order: Order,
        signal: Signal,
        initial_data: Vec<f64>,
        delta: f64,
        delta_i: f64,
    ) -> Result<Self> {
        check_initial(order, &initial_data)?;
        for (name, v) in [("delta", delta), ("delta_i", delta_i)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(Self {
            order,
            signal,
            initial_data,
            delta,
            delta_i,
            prior: None,
        })
    }

    pub fn with_prior(mut self, prior: SobolevPrior) -> Self {
        self.prior = Some(prior);
        self
    }
}

/// Serialized as `{p, n, delta, delta_i, rule, r, bound}`; `r` is `null`
/// unless the exact derivative is known.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub p: u32,
    pub n: usize,
    pub delta: f64,
    pub delta_i: f64,
    pub rule: String,
    pub r: Option<f64>,
    /// `C n^p δ + Δ_p C n^p δ_i`, plus `(γ+1) n^{−l} ‖y^{(p)}‖_{H^l}` under a prior.
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiffOutput {
    pub solution: TrigPoly,
    pub n: usize,
    pub report: ErrorReport,
}

pub fn a_priori_bound(
    consts: &BoundConstants,
    n: usize,
    delta: f64,
    delta_i: f64,
    prior: Option<SobolevPrior>,
) -> f64 {
    let amp = consts.c * (n as f64).powi(consts.p.get() as i32);
    let mut bound = amp * delta + consts.delta_p * amp * delta_i;
    if let Some(SobolevPrior { l, norm }) = prior {
        bound += (consts.gamma + 1.0) * (n as f64).powf(-l) * norm;
    }
    bound
}

pub fn differentiate(problem: &DiffProblem, rule: &ParameterRule) -> Result<DiffOutput> {
    let consts = builtin_constants(problem.order);
    let n = choose_n(rule, problem.delta, &consts)?;
    let rhs = match &problem.signal {
        Signal::Exact(sig) => {
            let truncated = taylor_truncate(sig, &problem.initial_data, problem.order)?;
            fourier_coeffs_exact(&truncated, n)?
        }
        Signal::Sampled(sig) => {
            let truncated = taylor_truncate_sampled(sig, &problem.initial_data, problem.order)?;
            fourier_coeffs_quadrature(&truncated, n)?
        }
    };
    let solution = solve_analytic(problem.order, &rhs);
    let prior = match *rule {
        ParameterRule::SobolevPrior { l, norm, .. } => Some(SobolevPrior { l, norm }),
        _ => problem.prior,
    };
    let report = ErrorReport {
        p: problem.order.get(),
        n,
        delta: problem.delta,
        delta_i: problem.delta_i,
        rule: rule.to_string(),
        r: None,
        bound: a_priori_bound(&consts, n, problem.delta, problem.delta_i, prior),
    };
    Ok(DiffOutput {
        solution,
        n,
        report,
    })
}

/// `‖A_n^† P_n sig‖` for each `n`; grows without bound when `sig` is outside
/// the range of `A^{(p)}`.
pub fn divergence_probe(order: Order, sig: &ExactSignal, n_list: &[usize]) -> Result<Vec<f64>> {
    n_list
        .iter()
        .map(|&n| Ok(solve_analytic(order, &fourier_coeffs_exact(sig, n)?).l2_norm()))
        .collect()
}
