//! Test problems, noise model, relative errors, table reproduction and plot
//! data.

mod catalog;
mod plot;
mod studies;
mod tables;

use std::f64::consts::PI;

pub use catalog::{catalog, CatalogEntry, CATALOG_IDS};
pub use plot::{emit_plot_data, figure, Figure, PlotData, PlotRun, PLOT_POINTS};
pub use studies::{
    good_filtering_trial, hat_sobolev_norm, log_log_slope, rate_study, NoisePlacement, RatePoint,
};
pub use tables::{run_table, run_table_with, table_spec, Table, TableCell, TableResult, TableSpec};

use crate::basis::{l2_error_exact, ExactSignal, TrigPoly, TrigTerm};
use crate::error::{Error, Result};
use crate::regularize::{differentiate, DiffProblem, ParameterRule, Signal};

/// `sig + δ sin(kx)/√π`, whose L² norm is exactly `δ`.
pub fn add_noise(sig: &ExactSignal, delta: f64, k: u32) -> Result<ExactSignal> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "noise frequency must be positive".into(),
        ));
    }
    if delta == 0.0 {
        return Ok(sig.clone());
    }
    sig.clone()
        .with_trig_term(TrigTerm::sin(delta / PI.sqrt(), k))
}

/// `‖approx − exact‖ / ‖exact‖` in L²(0, 2π).
pub fn relative_error(approx: &TrigPoly, exact: &ExactSignal) -> Result<f64> {
    let norm = exact.l2_norm();
    if norm == 0.0 {
        return Err(Error::UndefinedRatio);
    }
    Ok(l2_error_exact(approx, exact)? / norm)
}

/// One noisy run on a catalog entry: noise `δ sin(kx)/√π`, initial data
/// shifted by `δ_i`, fixed truncation degree `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub solution: TrigPoly,
    pub r: f64,
}

pub fn run_case(
    entry: &CatalogEntry,
    delta: f64,
    delta_i: f64,
    noise_freq: u32,
    rule: &ParameterRule,
) -> Result<RunOutput> {
    let noisy = add_noise(&entry.y, delta, noise_freq)?;
    let initial = entry.initial_data.iter().map(|v| v + delta_i).collect();
    let problem = DiffProblem::new(entry.p, Signal::Exact(noisy), initial, delta, delta_i)?;
    let out = differentiate(&problem, rule)?;
    let r = relative_error(&out.solution, &entry.derivative)?;
    Ok(RunOutput {
        solution: out.solution,
        r,
    })
}
