use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use trigdiff::basis::{fourier_coeffs_exact, sobolev_per_norm, SampledSignal};
use trigdiff::bounds::{
    check_decay, check_norm_bound, check_operators, check_solver_constants, CheckReport,
};
use trigdiff::experiments::{
    add_noise, catalog, emit_plot_data, figure, relative_error, run_table_with, table_spec,
    CatalogEntry, Table, PLOT_POINTS,
};
use trigdiff::galerkin::{assemble_matrix, Order};
use trigdiff::regularize::{differentiate, DiffProblem, ErrorReport, ParameterRule, Signal};

const KAPPA_SWEEP: [f64; 5] = [0.5, 1.0, 2.0, 4.0, 8.0];
const NORM_CUTOFF: usize = 100_000;

#[derive(Parser)]
#[command(
    name = "trigdiff",
    version,
    about = "Stable numerical differentiation on (0, 2π)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Differentiate sampled data or a built-in example and print the error report as JSON.
    Diff(DiffArgs),
    /// Reproduce the smooth-signal table as CSV.
    Table1(TableArgs),
    /// Reproduce the piecewise-signal table as CSV.
    Table3 {
        #[command(flatten)]
        args: TableArgs,
        /// Run the hat-derivative examples instead.
        #[arg(long)]
        hat: bool,
    },
    /// Run the norm, decay, constant-range and operator-norm sweeps and write the checks as CSV.
    VerifyBounds(VerifyArgs),
    /// Write curve data for one of the six figure configurations.
    Plot {
        #[arg(long)]
        figure: u32,
        #[arg(long, default_value_t = 8)]
        noise_freq: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Galerkin matrix as row-major CSV.
    DumpMatrix {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct DiffArgs {
    /// Differentiation order; defaults to the example's order.
    #[arg(long)]
    order: Option<u32>,
    /// CSV with columns `t,y` on the uniform grid 2πi/N, i = 0..N.
    #[arg(long, conflicts_with = "example", required_unless_present = "example")]
    input: Option<PathBuf>,
    /// Built-in example id, e.g. ex8_2.
    #[arg(long)]
    example: Option<String>,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long, default_value_t = 0.0)]
    delta_i: f64,
    /// fixed:N | noprior:a[,kappa] | sobolev:l[,norm][,noisy] | band:N1,N2
    #[arg(long)]
    rule: String,
    /// Initial values y(0),…,y^(p−1)(0); for examples, the exact values plus delta-i.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    initial: Option<Vec<f64>>,
    /// Frequency of the noise added to an example; 12 for ex8_1_*, otherwise 8.
    #[arg(long)]
    noise_freq: Option<u32>,
    /// Write the reconstruction sampled on a uniform grid as CSV `t,phi`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    noise_freq: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest n in the norm-bound sweep.
    #[arg(long, default_value_t = 100)]
    max_n: usize,
    /// Largest n in the decay sweep.
    #[arg(long, default_value_t = 20)]
    decay_max_n: usize,
    /// Largest n in the solver-constant range checks.
    #[arg(long, default_value_t = 2000)]
    constants_max_n: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Diff(args) => diff(args)?,
        Command::Table1(args) => table(Table::Table1, args)?,
        Command::Table3 { args, hat } => {
            table(if hat { Table::Table3Hat } else { Table::Table3 }, args)?
        }
        Command::VerifyBounds(args) => return verify(args),
        Command::Plot {
            figure: k,
            noise_freq,
            out,
        } => {
            let fig = figure(k)?;
            let data = emit_plot_data(&catalog(fig.id)?, &fig.runs, noise_freq)?;
            for (h, r) in data.headers[2..].iter().zip(&data.errors) {
                eprintln!("{} {h}: r = {r:?}", fig.id);
            }
            emit(out.as_deref(), &data.to_csv()?)?;
        }
        Command::DumpMatrix { p, n } => {
            emit(None, &assemble_matrix(Order::try_from(p)?, n).to_csv())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => match io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            r => Ok(r?),
        },
    }
}

enum RuleArg {
    Single(ParameterRule),
    KappaSweep(f64),
    SobolevFromExample { l: f64, noisy_initial: bool },
}

fn parse_rule(s: &str) -> Result<RuleArg> {
    if let Ok(rule) = s.parse::<ParameterRule>() {
        return Ok(RuleArg::Single(rule));
    }
    let (kind, args) = s.split_once(':').context("rule must look like kind:args")?;
    let args: Vec<&str> = args.split(',').map(str::trim).collect();
    match (kind.trim(), args.as_slice()) {
        ("noprior", [a]) => Ok(RuleArg::KappaSweep(a.parse().context("bad exponent a")?)),
        ("sobolev", [l]) => Ok(RuleArg::SobolevFromExample {
            l: l.parse().context("bad smoothness l")?,
            noisy_initial: false,
        }),
        ("sobolev", [l, "noisy"]) => Ok(RuleArg::SobolevFromExample {
            l: l.parse().context("bad smoothness l")?,
            noisy_initial: true,
        }),
        _ => Ok(RuleArg::Single(s.parse::<ParameterRule>()?)),
    }
}

fn diff(args: DiffArgs) -> Result<()> {
    let entry = args.example.as_deref().map(catalog).transpose()?;
    let order = match (&entry, args.order) {
        (Some(e), Some(p)) if e.p.get() != p => {
            bail!("example {} is of order {}, not {p}", e.id, e.p)
        }
        (Some(e), _) => e.p,
        (None, Some(p)) => Order::try_from(p)?,
        (None, None) => bail!("--order is required with --input"),
    };

    let (signal, initial) = match (&entry, &args.input) {
        (Some(e), _) => {
            let k = args
                .noise_freq
                .unwrap_or(if e.id.starts_with("ex8_1") { 12 } else { 8 });
            let noisy = add_noise(&e.y, args.delta, k)?;
            let initial = args
                .initial
                .clone()
                .unwrap_or_else(|| e.initial_data.iter().map(|v| v + args.delta_i).collect());
            (Signal::Exact(noisy), initial)
        }
        (None, Some(path)) => {
            let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            let sampled = SampledSignal::from_csv(file)?;
            let initial = args
                .initial
                .clone()
                .context("--initial is required with --input")?;
            (Signal::Sampled(sampled), initial)
        }
        (None, None) => unreachable!("clap requires --input or --example"),
    };
    let problem = DiffProblem::new(order, signal, initial, args.delta, args.delta_i)?;

    let rules = match parse_rule(&args.rule)? {
        RuleArg::Single(rule) => vec![rule],
        RuleArg::KappaSweep(a) => KAPPA_SWEEP
            .iter()
            .map(|&kappa| ParameterRule::NoPrior { a, kappa })
            .collect(),
        RuleArg::SobolevFromExample { l, noisy_initial } => {
            let e = entry
                .as_ref()
                .context("sobolev rule needs an explicit norm unless --example is given")?;
            vec![ParameterRule::SobolevPrior {
                l,
                norm: derivative_norm(e, l)?,
                noisy_initial,
            }]
        }
    };

    let mut reports: Vec<ErrorReport> = Vec::with_capacity(rules.len());
    let mut last = None;
    for rule in &rules {
        let mut out = differentiate(&problem, rule)?;
        if let Some(e) = &entry {
            out.report.r = Some(relative_error(&out.solution, &e.derivative)?);
        }
        reports.push(out.report.clone());
        last = Some(out);
    }

    let json = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])?
    } else {
        serde_json::to_string_pretty(&reports)?
    };
    println!("{json}");

    if let (Some(path), Some(out)) = (&args.out, last) {
        let mut csv = String::from("t,phi\n");
        for i in 0..PLOT_POINTS {
            let t = std::f64::consts::TAU * i as f64 / (PLOT_POINTS - 1) as f64;
            csv.push_str(&format!("{t:?},{:?}\n", out.solution.eval(t)));
        }
        emit(Some(path), &csv)?;
    }
    Ok(())
}

fn derivative_norm(entry: &CatalogEntry, l: f64) -> Result<f64> {
    let coeffs = fourier_coeffs_exact(&entry.derivative, NORM_CUTOFF)?;
    Ok(sobolev_per_norm(&coeffs, l))
}

fn table(which: Table, args: TableArgs) -> Result<()> {
    let result = run_table_with(&table_spec(which), args.noise_freq)?;
    let passed = result.cells.iter().filter(|c| c.pass).count();
    eprintln!(
        "{which}: {passed}/{} cells within tolerance",
        result.cells.len()
    );
    emit(args.out.as_deref(), &result.to_csv()?)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let mut report = CheckReport::default();
    let all: Vec<usize> = (1..=args.max_n).collect();
    let decay_all: Vec<usize> = (1..=args.decay_max_n).collect();
    let decay_third: Vec<usize> = (5..=args.decay_max_n).collect();
    let op_ns: Vec<usize> = [5, 10, 20, 40]
        .into_iter()
        .filter(|&n| n <= args.max_n)
        .collect();
    for p in Order::ALL {
        report.extend(check_norm_bound(p, &all)?);
        let ns = if p == Order::Third {
            &decay_third
        } else {
            &decay_all
        };
        if !ns.is_empty() {
            report.extend(check_decay(p, ns, 10)?);
        }
        report.extend(check_operators(p, &op_ns, args.trials, args.seed)?);
    }
    report.extend(check_solver_constants(
        &(1..=args.constants_max_n).collect::<Vec<_>>(),
    ));

    let failed = report.failures().count();
    eprintln!("{} checks, {failed} failed", report.rows.len());
    emit(args.out.as_deref(), &report.to_csv()?)?;
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
