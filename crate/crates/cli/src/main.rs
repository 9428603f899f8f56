use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use fopa_core::par;
use fopa_core::sweep::{figure, run_sweep, FigureOptions, OutputFormat, Quantity, SweepSpec, SweptParam, Table};
use fopa_core::transfer::{r_opt, r_opt_by_bisection};
use fopa_core::verify::{self, Fault, Level};

/// Quantum Cramér-Rao bounds of a feedback-assisted OPA interferometer with
/// multi-photon subtraction.
#[derive(Parser)]
#[command(name = "fopa", version)]
struct Cli {
    /// Maximum number of worker threads (default: all cores).
    #[arg(long, global = true, env = "FOPA_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one quantity along a one-dimensional parameter grid.
    Sweep(SweepArgs),
    /// Emit the data table for a figure preset.
    Figure(FigureArgs),
    /// Run the self-checks; exits with 1 if any fails.
    Verify(VerifyArgs),
    /// Print the optimal feedback reflectivity for a given gain.
    ROpt {
        #[arg(long)]
        g: f64,
    },
}

#[derive(Args)]
struct OutputArgs {
    /// Output file, or `-` for standard output.
    #[arg(long)]
    out: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON file with any subset of the sweep fields; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Swept parameter: R, g, alpha or eta.
    #[arg(long)]
    param: Option<SweptParam>,
    #[arg(long, allow_negative_numbers = true)]
    from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    to: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    g: Option<f64>,
    #[arg(long = "R", alias = "r")]
    r: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    /// Number of repeated measurements.
    #[arg(long)]
    v: Option<u32>,
    /// qcrb-single-ideal, qcrb-single-loss, qcrb-two-ideal, qcrb-two-loss,
    /// photon-number, g2a, g2b or g2ab.
    #[arg(long)]
    quantity: Option<Quantity>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FigureArgs {
    /// fig3 … fig19 (fig18a / fig18b for the two panels of fig18).
    id: String,
    /// Sub-figure subtraction order on mode a (figures 7, 8, 13, 14).
    #[arg(long)]
    m: Option<u32>,
    /// Sub-figure subtraction order on mode b.
    #[arg(long)]
    n: Option<u32>,
    /// Grid points along the horizontal axis.
    #[arg(long)]
    steps: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "quick")]
    level: Level,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Deliberately break a formula to confirm the checks notice.
    #[arg(long, default_value = "none")]
    inject_fault: Fault,
}

enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
    Verification,
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn runtime(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Runtime(e.into())
}

fn load_spec(args: &SweepArgs) -> Result<SweepSpec, Failure> {
    let mut spec = match &args.config {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(usage)?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display())).map_err(usage)?
        }
        None => SweepSpec::default(),
    };
    macro_rules! apply {
        ($($field:ident),*) => { $( if let Some(v) = args.$field { spec.$field = v; } )* };
    }
    apply!(param, from, to, steps, g, r, alpha, eta, m, n, v, quantity);
    if let Some(out) = &args.output.out {
        spec.out = Some(out.clone());
    }
    if let Some(format) = args.output.format {
        spec.format = format;
    }
    spec.validate().map_err(usage)?;
    Ok(spec)
}

fn emit(table: &Table, format: OutputFormat, out: Option<&str>) -> Result<(), Failure> {
    match out {
        None | Some("-") => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table.write(format, &mut lock).and_then(|_| lock.flush()).map_err(runtime)
        }
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {path}")).map_err(runtime)?;
            let mut writer = BufWriter::new(file);
            table.write(format, &mut writer).and_then(|_| writer.flush()).map_err(runtime)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Sweep(args) => {
            let spec = load_spec(&args)?;
            let table = par::with_workers(cli.workers, || run_sweep(&spec)).map_err(usage)?;
            emit(&table, spec.format, spec.out.as_deref())
        }
        Command::Figure(args) => {
            let opts = FigureOptions { m: args.m, n: args.n, steps: args.steps };
            let table = par::with_workers(cli.workers, || figure(&args.id, &opts)).map_err(usage)?;
            emit(&table, args.output.format.unwrap_or_default(), args.output.out.as_deref())
        }
        Command::Verify(args) => {
            let report = par::with_workers(cli.workers, || verify::run(args.level, args.inject_fault));
            if args.json {
                println!("{}", serde_json::to_string_pretty(&report).map_err(runtime)?);
            } else {
                println!("{report}");
            }
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::ROpt { g } => {
            if !(g.is_finite() && g >= 0.0) {
                return Err(usage(anyhow::anyhow!("g = {g} must be finite and >= 0")));
            }
            let bisected = r_opt_by_bisection(g).map_err(usage)?;
            println!("{}", r_opt(g));
            eprintln!("bisection on k0: {bisected}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
