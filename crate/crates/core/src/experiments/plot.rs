use std::f64::consts::TAU;

use serde::Serialize;

use super::{catalog, run_case, CatalogEntry};
use crate::error::{Error, Result};
use crate::regularize::ParameterRule;

pub const PLOT_POINTS: usize = 2048;

/// `(δ, δ_i, n)` for one reconstructed curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlotRun {
    pub delta: f64,
    pub delta_i: f64,
    pub n: usize,
}

impl PlotRun {
    pub const fn new(delta: f64, delta_i: f64, n: usize) -> Self {
        Self { delta, delta_i, n }
    }

    fn label(&self) -> String {
        format!("d{}_di{}_n{}", self.delta, self.delta_i, self.n)
    }
}

/// Columnar data: `t`, `exact`, then one column per run.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotData {
    pub headers: Vec<String>,
    pub columns: Vec<Vec<f64>>,
    /// Relative error of each run, in column order.
    pub errors: Vec<f64>,
}

impl PlotData {
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        let rows = self.columns.first().map_or(0, Vec::len);
        for i in 0..rows {
            w.write_record(self.columns.iter().map(|c| format!("{:?}", c[i])))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Samples the exact derivative and each reconstruction on a uniform grid of
/// [`PLOT_POINTS`] points covering `[0, 2π]`.
pub fn emit_plot_data(entry: &CatalogEntry, runs: &[PlotRun], noise_freq: u32) -> Result<PlotData> {
    let ts: Vec<f64> = (0..PLOT_POINTS)
        .map(|i| TAU * i as f64 / (PLOT_POINTS - 1) as f64)
        .collect();
    let mut headers = vec!["t".to_string(), "exact".to_string()];
    let mut columns = vec![
        ts.clone(),
        ts.iter().map(|&t| entry.derivative.eval(t)).collect(),
    ];
    let mut errors = Vec::with_capacity(runs.len());
    for run in runs {
        let out = run_case(
            entry,
            run.delta,
            run.delta_i,
            noise_freq,
            &ParameterRule::Fixed(run.n),
        )?;
        headers.push(run.label());
        columns.push(ts.iter().map(|&t| out.solution.eval(t)).collect());
        errors.push(out.r);
    }
    Ok(PlotData {
        headers,
        columns,
        errors,
    })
}

/// A published figure configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub number: u32,
    pub id: &'static str,
    pub runs: Vec<PlotRun>,
}

pub fn figure(number: u32) -> Result<Figure> {
    let r = PlotRun::new;
    let (id, runs) = match number {
        1 => (
            "ex8_2",
            vec![
                r(0.1, 0.0, 7),
                r(0.05, 0.0, 10),
                r(0.01, 0.0, 23),
                r(0.1, 0.1, 4),
                r(0.05, 0.05, 5),
                r(0.01, 0.01, 12),
            ],
        ),
        2 => (
            "ex8_3",
            vec![
                r(0.1, 0.0, 3),
                r(0.05, 0.0, 3),
                r(0.01, 0.0, 6),
                r(0.1, 0.1, 2),
                r(0.05, 0.05, 3),
                r(0.01, 0.01, 4),
            ],
        ),
        3 => (
            "ex8_4",
            vec![
                r(0.1, 0.0, 1),
                r(0.05, 0.0, 1),
                r(0.01, 0.0, 2),
                r(0.1, 0.1, 1),
                r(0.05, 0.05, 1),
                r(0.01, 0.01, 2),
            ],
        ),
        4 => ("ex8_5", vec![r(0.01, 0.0, 24), r(0.01, 0.01, 24)]),
        5 => ("ex8_6", vec![r(0.01, 0.0, 24), r(0.01, 0.01, 16)]),
        6 => ("ex8_7", vec![r(0.01, 0.0, 16), r(0.01, 0.01, 8)]),
        other => {
            return Err(Error::InvalidParameter(format!(
                "figure must be 1..=6, got {other}"
            )))
        }
    };
    catalog(id)?;
    Ok(Figure { number, id, runs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn column_counts() {
        let f1 = figure(1).unwrap();
        let e = catalog(f1.id).unwrap();
        assert_eq!(emit_plot_data(&e, &f1.runs, 8).unwrap().columns.len(), 8);
        assert_eq!(emit_plot_data(&e, &[], 8).unwrap().columns.len(), 2);
        let f6 = figure(6).unwrap();
        let d = emit_plot_data(&catalog(f6.id).unwrap(), &f6.runs, 8).unwrap();
        assert_eq!(d.headers.len(), 4);
        assert!(d.columns.iter().all(|c| c.len() == PLOT_POINTS));
        assert!(figure(7).is_err());
    }
}
