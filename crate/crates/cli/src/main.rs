//! Command-line interface: matrix logarithm runs, the benchmark sweep, and
//! convergence-region grid generation.

use clap::{Args, Parser, Subcommand, ValueEnum};
use matlog::bench::{run_experiment, BenchConfig, EigenvalueDistribution};
use matlog::logm::{
    error_estimate, fixed_point_logm, FixedPointConfig, Initializer, LogmError, SpectralBounds,
};
use matlog::scalar::region_grid;
use matlog_cli::csvio::{grid_csv, records_csv, summary_csv};
use matlog_cli::format_full;
use matlog_cli::matrixio::{read_matrix, write_matrix};
use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "matlog",
    about = "Matrix logarithm by a fixed-point iteration on successive exponentials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the logarithm of a matrix read from a text file.
    Logm(LogmArgs),
    /// Run the random-matrix benchmark sweep and emit CSVs.
    Bench(BenchArgs),
    /// Sample the convergence-region indicator over a complex rectangle.
    Region(RegionArgs),
}

#[derive(Args)]
struct LogmArgs {
    /// Input matrix file.
    #[arg(long)]
    input: PathBuf,
    /// Output file for the computed logarithm.
    #[arg(long)]
    output: PathBuf,
    /// Optional human-readable run report.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Stopping threshold for |X_n| |X_{n+1} - X_n|.
    #[arg(long, default_value_t = 1e-10)]
    epsilon: f64,
    #[arg(long, default_value_t = 500)]
    max_iter: u32,
    /// Initializer: "paper" (2A - (1+ln 2)I), "linear" (from spectral
    /// bounds), or "file:<path>" for an explicit X0.
    #[arg(long, default_value = "paper")]
    init: String,
    /// Lower spectral bound for the linear initializer.
    #[arg(long)]
    lambda_min: Option<f64>,
    /// Upper spectral bound for the linear initializer.
    #[arg(long)]
    lambda_max: Option<f64>,
    /// Pre-scaling factor: solve on A/sigma, shift by ln(sigma).
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Apply one refinement step after convergence.
    #[arg(long)]
    refine: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum DistKind {
    Uniform,
    Exponential,
}

#[derive(Args)]
struct BenchArgs {
    /// Matrix dimensions to sweep.
    #[arg(long, value_delimiter = ',', default_values_t = [4usize, 8, 16])]
    dims: Vec<usize>,
    /// Random samples per dimension.
    #[arg(long, default_value_t = 100)]
    samples: u32,
    /// Eigenvalue distribution for the test matrices.
    #[arg(long, value_enum, default_value_t = DistKind::Uniform)]
    dist: DistKind,
    /// Rate of the exponential eigenvalue distribution.
    #[arg(long, default_value_t = EigenvalueDistribution::DEFAULT_RATE)]
    rate: f64,
    /// Stopping thresholds to sweep.
    #[arg(
        long,
        visible_alias = "eps",
        value_delimiter = ',',
        default_values_t = [1e-2, 1e-4, 1e-6, 1e-8, 1e-10]
    )]
    eps_list: Vec<f64>,
    /// Master seed; identical seeds give byte-identical CSVs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also record the error after one refinement step.
    #[arg(long)]
    refine: bool,
    /// Per-sample records CSV path.
    #[arg(long, default_value = "records.csv")]
    records: PathBuf,
    /// Per-cell summary CSV path.
    #[arg(long, default_value = "summary.csv")]
    summary: PathBuf,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct RegionArgs {
    #[arg(long, default_value_t = -PI)]
    re_min: f64,
    #[arg(long, default_value_t = PI)]
    re_max: f64,
    #[arg(long, default_value_t = -PI)]
    im_min: f64,
    #[arg(long, default_value_t = PI)]
    im_max: f64,
    /// Samples per axis.
    #[arg(long, default_value_t = 201)]
    resolution: usize,
    /// Grid CSV path.
    #[arg(long, default_value = "region.csv")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Logm(args) => cmd_logm(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Region(args) => cmd_region(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn cmd_logm(args: LogmArgs) -> Result<ExitCode, String> {
    let a = read_matrix(&args.input).map_err(|e| format!("{}: {e}", args.input.display()))?;

    let init = match args.init.as_str() {
        "paper" => Initializer::PaperDefault,
        "linear" => {
            let bounds = match (args.lambda_min, args.lambda_max) {
                (Some(lambda_min), Some(lambda_max)) => {
                    Some(SpectralBounds { lambda_min, lambda_max })
                }
                (None, None) => None,
                _ => return Err("--lambda-min and --lambda-max must be given together".into()),
            };
            Initializer::LinearFromBounds(bounds)
        }
        other => match other.strip_prefix("file:") {
            Some(path) => {
                let x0 = read_matrix(path.as_ref()).map_err(|e| format!("{path}: {e}"))?;
                Initializer::UserMatrix(x0)
            }
            None => return Err(format!("unknown initializer {other:?}")),
        },
    };

    let mut config = FixedPointConfig::new(args.epsilon);
    config.max_iter = args.max_iter;
    config.init = init;
    config.sigma = args.sigma;
    config.refine = args.refine;

    let result = match fixed_point_logm(&a, &config) {
        Ok(r) => r,
        Err(LogmError::Diverged { iterations, last_step }) => {
            eprintln!("diverged after {iterations} iterations (step size {last_step})");
            return Ok(ExitCode::from(2));
        }
        Err(e) => return Err(e.to_string()),
    };

    write_matrix(&args.output, &result.x)
        .map_err(|e| format!("{}: {e}", args.output.display()))?;

    if let Some(report_path) = &args.report {
        let error = error_estimate(&a, &result.x).map_err(|e| e.to_string())?;
        let r = &result.report;
        let text = format!(
            "converged: {}\niterations: {}\nstop_value: {}\nfixed_point_muls: {}\n\
             exp_muls: {}\ntotal_muls: {}\nrefinement_applied: {}\nerror_estimate: {}\n\
             inverse_residual: {}\n",
            r.converged,
            r.iterations,
            format_full(r.stop_value),
            r.ledger.fixed_point_muls,
            r.ledger.exp_muls,
            r.ledger.total(),
            r.refinement_applied,
            format_full(error),
            format_full(r.inverse_residual),
        );
        std::fs::write(report_path, text)
            .map_err(|e| format!("{}: {e}", report_path.display()))?;
    }

    if result.report.converged {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "did not converge within {} iterations (stop value {})",
            result.report.iterations,
            format_full(result.report.stop_value)
        );
        Ok(ExitCode::from(2))
    }
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode, String> {
    if args.dims.is_empty() || args.eps_list.is_empty() || args.samples == 0 {
        return Err("dims, eps-list and samples must be non-empty".into());
    }
    let distribution = match args.dist {
        DistKind::Uniform => EigenvalueDistribution::Uniform {
            interval: EigenvalueDistribution::DEFAULT_INTERVAL,
        },
        DistKind::Exponential => EigenvalueDistribution::Exponential {
            interval: EigenvalueDistribution::DEFAULT_INTERVAL,
            rate: args.rate,
        },
    };
    let config = BenchConfig {
        dims: args.dims,
        samples: args.samples,
        eps_values: args.eps_list,
        distribution,
        master_seed: args.seed,
        refine: args.refine,
    };
    let (records, summary) = run_experiment(&config);
    std::fs::write(&args.records, records_csv(&records))
        .map_err(|e| format!("{}: {e}", args.records.display()))?;
    std::fs::write(&args.summary, summary_csv(&summary))
        .map_err(|e| format!("{}: {e}", args.summary.display()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_region(args: RegionArgs) -> Result<ExitCode, String> {
    let grid = region_grid(
        (args.re_min, args.re_max),
        (args.im_min, args.im_max),
        args.resolution,
    )
    .map_err(|e| e.to_string())?;
    std::fs::write(&args.out, grid_csv(&grid))
        .map_err(|e| format!("{}: {e}", args.out.display()))?;
    Ok(ExitCode::SUCCESS)
}
