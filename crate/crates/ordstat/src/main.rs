//! Command-line front end: Monte Carlo sweeps, closed-form tables, one-shot
//! estimation, and empirical CDFs, all reproducible from a master seed.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordstat::output::{self, fmt_f64, fmt_opt, theta_columns};
use ordstat::{
    estimators, harness, perf, DrawPolicy, Error, EstimatorId, ExperimentConfig, Family,
    FamilySpec, HyperDraw, NoiseModel, SampleSet,
};
use serde_json::json;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ordstat",
    version,
    about = "Order-statistic location estimators: benchmarks, tables, and one-shot estimates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo sweep over families, estimators, and sample sizes
    Sweep(SweepArgs),
    /// Closed-form bias/MSE table, no simulation
    Table(TableArgs),
    /// Apply one estimator to a sample read from a file or stdin
    Estimate(EstimateArgs),
    /// Empirical CDF of noise draws
    Ecdf(EcdfArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

/// Hyperparameter flags shared by all subcommands. Families only read the
/// flags they need: β is every family's scale, α is the Weibull/Pareto shape
/// or the mixture's Gaussian weight, σ is the mixture's Gaussian spread.
#[derive(Args)]
struct ThetaArgs {
    /// Scale hyperparameter beta
    #[arg(long)]
    beta: Option<f64>,
    /// Shape (weibull, pareto) or Gaussian mixing weight (mixture)
    #[arg(long)]
    alpha: Option<f64>,
    /// Gaussian standard deviation (mixture only)
    #[arg(long)]
    sigma: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    /// Noise family; repeat the flag to sweep several
    #[arg(long = "family", value_name = "FAMILY", required = true)]
    families: Vec<Family>,
    /// Restrict to these estimators (default: every applicable one)
    #[arg(long = "estimator", value_name = "ESTIMATOR")]
    estimators: Vec<EstimatorId>,
    /// Comma-separated sizes, inclusive a..b ranges, or `paper` for the
    /// built-in grid (2..2000 plus a fine band around 200)
    #[arg(long = "n-grid", default_value = "paper")]
    n_grid: String,
    /// Monte Carlo replicates per cell
    #[arg(long = "mc-runs", default_value_t = 5000)]
    mc_runs: usize,
    /// Master seed; everything downstream is a pure function of it
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    theta: ThetaArgs,
    /// Redraw hyperparameters per replicate from built-in ranges instead of
    /// fixing them (--alpha still pins the mixture's mixing weight)
    #[arg(long, conflicts_with_all = ["beta", "sigma"])]
    draw: bool,
    /// Give every estimator its own noise draws instead of sharing samples
    /// within a cell
    #[arg(long = "independent-draws")]
    independent_draws: bool,
    /// True location added to every simulated sample
    #[arg(long = "true-x", default_value_t = 0.0)]
    true_x: f64,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct TableArgs {
    /// Noise family; repeat the flag for several
    #[arg(long = "family", value_name = "FAMILY", required = true)]
    families: Vec<Family>,
    #[command(flatten)]
    theta: ThetaArgs,
    /// Comma-separated sizes, inclusive a..b ranges, or `paper`
    #[arg(long = "n-grid", default_value = "paper")]
    n_grid: String,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct EstimateArgs {
    /// Assumed noise family (not needed for `min`)
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    estimator: EstimatorId,
    #[command(flatten)]
    theta: ThetaArgs,
    /// Sample file, one measurement per line, `#` comments allowed
    /// (default: stdin)
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct EcdfArgs {
    #[arg(long)]
    family: Family,
    #[command(flatten)]
    theta: ThetaArgs,
    /// Redraw hyperparameters per draw from built-in ranges
    #[arg(long, conflicts_with_all = ["beta", "sigma"])]
    draw: bool,
    /// Number of draws
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(message) = configure_threads() {
        eprintln!("error: {message}");
        return ExitCode::from(1);
    }
    let result = match cli.command {
        Command::Sweep(args) => cmd_sweep(args),
        Command::Table(args) => cmd_table(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::Ecdf(args) => cmd_ecdf(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// Honor ORDSTAT_THREADS (0 or unset: one thread per core).
fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("ORDSTAT_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("ORDSTAT_THREADS must be a non-negative integer, got {raw:?}"))?;
    if threads == 0 {
        return Ok(());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

type CliResult = Result<(), Box<dyn std::error::Error>>;

/// Build a fixed model from the flags a family needs; extra flags are
/// ignored so one command line can cover several families.
fn fixed_model(family: Family, theta: &ThetaArgs) -> Result<NoiseModel, Error> {
    let need = |value: Option<f64>, flag: &str| {
        value.ok_or_else(|| Error::InvalidConfig(format!("family {family} requires --{flag}")))
    };
    match family {
        Family::Uniform => NoiseModel::uniform(need(theta.beta, "beta")?),
        Family::Exponential => NoiseModel::exponential(need(theta.beta, "beta")?),
        Family::Rayleigh => NoiseModel::rayleigh(need(theta.beta, "beta")?),
        Family::Weibull => NoiseModel::weibull(need(theta.beta, "beta")?, need(theta.alpha, "alpha")?),
        Family::Pareto => NoiseModel::pareto(need(theta.beta, "beta")?, need(theta.alpha, "alpha")?),
        Family::Mixture => NoiseModel::mixture(
            need(theta.alpha, "alpha")?,
            need(theta.sigma, "sigma")?,
            need(theta.beta, "beta")?,
        ),
    }
}

/// Expand the `--n-grid` grammar into a sorted, deduplicated size list.
fn parse_n_grid(text: &str) -> Result<Vec<usize>, Error> {
    let text = text.trim();
    if text == "paper" {
        return Ok(harness::reference_grid());
    }
    let bad = |part: &str| Error::InvalidConfig(format!("bad n-grid entry {part:?}"));
    let mut grid = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: usize = lo.trim().parse().map_err(|_| bad(part))?;
            let hi: usize = hi.trim().parse().map_err(|_| bad(part))?;
            if hi < lo {
                return Err(bad(part));
            }
            grid.extend(lo..=hi);
        } else {
            grid.push(part.parse().map_err(|_| bad(part))?);
        }
    }
    grid.sort_unstable();
    grid.dedup();
    Ok(grid)
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> CliResult {
    match path {
        Some(path) => fs::write(path, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> CliResult {
    let mut hyper = HyperDraw::default();
    let families: Vec<FamilySpec> = if args.draw {
        if let Some(alpha) = args.theta.alpha {
            hyper.mixture_alpha = alpha;
        }
        args.families.iter().map(|&f| FamilySpec::Draw(f)).collect()
    } else {
        args.families
            .iter()
            .map(|&f| fixed_model(f, &args.theta).map(FamilySpec::Fixed))
            .collect::<Result<_, _>>()?
    };
    let config = ExperimentConfig {
        families,
        estimators: (!args.estimators.is_empty()).then(|| args.estimators.clone()),
        n_grid: parse_n_grid(&args.n_grid)?,
        mc_runs: args.mc_runs,
        master_seed: args.seed,
        true_x: args.true_x,
        hyper,
        draw_policy: if args.independent_draws {
            DrawPolicy::Independent
        } else {
            DrawPolicy::Shared
        },
    };
    let sweep = harness::run_sweep(&config)?;
    for skip in &sweep.skipped {
        eprintln!(
            "skipped family={} estimator={} n={}: {}",
            skip.family, skip.estimator, skip.n, skip.reason
        );
    }
    let mut buf = Vec::new();
    match args.format {
        OutputFormat::Csv => output::write_csv(&mut buf, &sweep.records)?,
        OutputFormat::Json => output::write_json(&mut buf, &sweep.records)?,
    }
    write_output(args.out.as_deref(), &buf)
}

const TABLE_HEADER: &str = "family,estimator,n,beta,alpha,sigma,analytic_bias,analytic_mse,asymptotic";

fn cmd_table(args: TableArgs) -> CliResult {
    let n_grid = parse_n_grid(&args.n_grid)?;
    if n_grid.is_empty() || n_grid[0] < 1 || *n_grid.last().unwrap() > 2000 {
        return Err(Error::InvalidConfig("n grid values must lie in [1, 2000]".into()).into());
    }
    let models = args
        .families
        .iter()
        .map(|&f| fixed_model(f, &args.theta))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    for model in &models {
        let (beta, alpha, sigma) = theta_columns(Some(model));
        for &est in EstimatorId::applicable(model.family()) {
            for &n in &n_grid {
                match perf::perf_formula(model, est, n) {
                    Ok(formula) => rows.push((model.family(), est, n, beta, alpha, sigma, formula)),
                    Err(reason) => eprintln!(
                        "skipped family={} estimator={} n={}: {}",
                        model.family(),
                        est,
                        n,
                        reason
                    ),
                }
            }
        }
    }
    let mut buf = Vec::new();
    match args.format {
        OutputFormat::Csv => {
            writeln!(buf, "{TABLE_HEADER}")?;
            for (family, est, n, beta, alpha, sigma, formula) in &rows {
                writeln!(
                    buf,
                    "{},{},{},{},{},{},{},{},{}",
                    family,
                    est,
                    n,
                    fmt_opt(*beta),
                    fmt_opt(*alpha),
                    fmt_opt(*sigma),
                    fmt_opt(formula.bias.value()),
                    fmt_opt(formula.mse.value()),
                    formula.asymptotic()
                )?;
            }
        }
        OutputFormat::Json => {
            let values: Vec<serde_json::Value> = rows
                .iter()
                .map(|(family, est, n, beta, alpha, sigma, formula)| {
                    json!({
                        "family": family.name(),
                        "estimator": est.name(),
                        "n": n,
                        "beta": beta,
                        "alpha": alpha,
                        "sigma": sigma,
                        "analytic_bias": formula.bias.value(),
                        "analytic_mse": formula.mse.value(),
                        "asymptotic": formula.asymptotic(),
                    })
                })
                .collect();
            serde_json::to_writer_pretty(&mut buf, &serde_json::Value::Array(values))?;
            writeln!(buf)?;
        }
    }
    write_output(args.out.as_deref(), &buf)
}

/// Read one measurement per line; blank lines and `#` comments are skipped.
fn read_sample(path: Option<&Path>) -> Result<Vec<f64>, Box<dyn std::error::Error>> {
    let text = match path {
        Some(path) => fs::read_to_string(path)?,
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    let mut values = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: f64 = line
            .parse()
            .map_err(|_| Error::ParseRow(format!("bad sample line {line:?}")))?;
        values.push(value);
    }
    Ok(values)
}

fn cmd_estimate(args: EstimateArgs) -> CliResult {
    let sample = SampleSet::new(read_sample(args.input.as_deref())?)?;
    let ordered = sample.order();
    let need_family = || {
        args.family.ok_or_else(|| {
            Error::InvalidConfig(format!(
                "estimator {} requires --family",
                args.estimator
            ))
        })
    };
    let estimate = match args.estimator {
        EstimatorId::Blue => estimators::blue(&fixed_model(need_family()?, &args.theta)?, &ordered)?,
        EstimatorId::UnbiasedKnown => {
            estimators::unbiased_known(&fixed_model(need_family()?, &args.theta)?, &ordered)?
        }
        EstimatorId::UnbiasedUnknown => estimators::unbiased_unknown(need_family()?, &ordered)?,
        EstimatorId::MinOrder => estimators::min_estimator(&ordered),
        EstimatorId::MixtureRank => {
            if let Some(family) = args.family {
                if family != Family::Mixture {
                    return Err(Error::UnsupportedEstimator {
                        estimator: EstimatorId::MixtureRank,
                        family,
                    }
                    .into());
                }
            }
            let alpha = args.theta.alpha.ok_or_else(|| {
                Error::InvalidConfig("estimator mixture-rank requires --alpha".into())
            })?;
            estimators::mixture_rank(alpha, &ordered)?
        }
    };
    println!("{}", fmt_f64(estimate.value));
    Ok(())
}

fn cmd_ecdf(args: EcdfArgs) -> CliResult {
    let mut hyper = HyperDraw::default();
    let spec = if args.draw {
        if let Some(alpha) = args.theta.alpha {
            hyper.mixture_alpha = alpha;
        }
        FamilySpec::Draw(args.family)
    } else {
        FamilySpec::Fixed(fixed_model(args.family, &args.theta)?)
    };
    let draws = harness::draw_noise(&spec, args.n, args.seed, &hyper)?;
    let steps = harness::ecdf(&draws)?;
    let mut buf = Vec::new();
    match args.format {
        OutputFormat::Csv => {
            writeln!(buf, "value,cumprob")?;
            for (value, prob) in &steps {
                writeln!(buf, "{},{}", fmt_f64(*value), fmt_f64(*prob))?;
            }
        }
        OutputFormat::Json => {
            let values: Vec<serde_json::Value> = steps
                .iter()
                .map(|(value, prob)| json!({ "value": value, "cumprob": prob }))
                .collect();
            serde_json::to_writer_pretty(&mut buf, &serde_json::Value::Array(values))?;
            writeln!(buf)?;
        }
    }
    write_output(args.out.as_deref(), &buf)
}
