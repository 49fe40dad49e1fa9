use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qcalc::config::{Format, RunConfig};
use qcalc::error::CliError;
use qcalc::eval::{cmd_eval, EvalArgs, Function};
use qcalc::figure::{figure_csv, figure_json};
use qcalc::output::{csv_table, emit};
use qcalc::report::CSV_HEADER;
use qcalc::similarity::{cmd_similarity, parse_window, SimilarityArgs};
use qcalc::{run_suite, Suite};
use qcalc_core::qburgers::FigureId;

#[derive(Parser, Debug)]
#[command(name = "qcalc", version, about = "q-calculus evaluator and verification suites")]
#[command(allow_negative_numbers = true)]
struct Cli {
    /// Deformation base q > 0, q != 1 (decimal or p/r).
    #[arg(long, global = true, default_value = "2")]
    q: String,
    /// Viscosity.
    #[arg(long, global = true, default_value = "1")]
    nu: String,
    #[arg(long, global = true, default_value = "1")]
    hbar: String,
    #[arg(long, global = true, default_value = "1")]
    mass: String,
    #[arg(long, global = true, env = "QCALC_PRECISION_BITS", default_value_t = 256)]
    precision_bits: usize,
    /// Overrides the residual tolerance of every residual check.
    #[arg(long, global = true)]
    tolerance: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function at a point.
    #[command(allow_negative_numbers = true)]
    Eval(EvalCmd),
    /// Run a verification suite; exits 1 if any check fails.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Highest polynomial order checked.
        #[arg(long = "Nmax")]
        n_max: Option<usize>,
    },
    /// Write the (x, u) samples of a published shock profile.
    #[command(allow_negative_numbers = true)]
    Figure {
        /// fig1 to fig6.
        #[arg(value_parser = parse_figure)]
        id: FigureId,
    },
    /// Self-similarity metric of a shock profile.
    #[command(allow_negative_numbers = true)]
    Similarity(SimilarityCmd),
}

#[derive(Args, Debug)]
struct EvalCmd {
    #[arg(value_enum)]
    function: Function,
    #[arg(long)]
    x: Option<String>,
    /// Imaginary part of the argument.
    #[arg(long)]
    im: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long = "N")]
    n: Option<usize>,
    /// Wave numbers, comma separated.
    #[arg(long, value_delimiter = ',')]
    k: Vec<String>,
    #[arg(long)]
    offset: Option<String>,
    /// Momenta, comma separated.
    #[arg(long, value_delimiter = ',')]
    p: Vec<String>,
    /// Amplitudes matching `--p`.
    #[arg(long, value_delimiter = ',')]
    amp: Vec<String>,
}

#[derive(Args, Debug)]
struct SimilarityCmd {
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<String>,
    #[arg(long, default_value = "0")]
    offset: String,
    #[arg(long, default_value = "0")]
    t: String,
    /// lo,hi with 0 < lo < hi.
    #[arg(long, value_parser = parse_window, default_value = "5,50")]
    window: (f64, f64),
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, default_value_t = 64)]
    samples: usize,
    /// Write both sampled profiles to this CSV file.
    #[arg(long)]
    dump: Option<PathBuf>,
}

fn parse_figure(s: &str) -> Result<FigureId, String> {
    s.parse().map_err(|e: qcalc_core::QError| e.to_string())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let config = RunConfig::new(
        &cli.q,
        &cli.nu,
        &cli.hbar,
        &cli.mass,
        cli.precision_bits,
        cli.tolerance.as_deref(),
        cli.format,
        cli.seed,
    )?;
    let out = cli.out.as_deref();
    match cli.command {
        Command::Eval(e) => {
            let args = EvalArgs { x: e.x, im: e.im, t: e.t, n: e.n, k: e.k, offset: e.offset, p: e.p, amp: e.amp };
            let res = cmd_eval(e.function, &args, &config)?;
            emit(out, &res.render(config.format.unwrap_or(Format::Csv))?)?;
            Ok(true)
        }
        Command::Verify { suite, n_max } => {
            let report = run_suite(suite, &config, n_max)?;
            let text = match config.format.unwrap_or(Format::Json) {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Csv => csv_table(&CSV_HEADER, &report.to_csv_rows())?,
            };
            emit(out, &text)?;
            for f in report.failures() {
                eprintln!("FAIL {}", f.check);
            }
            Ok(report.pass)
        }
        Command::Figure { id } => {
            let text = match config.format.unwrap_or(Format::Csv) {
                Format::Csv => figure_csv(id, config.precision_bits)?,
                Format::Json => serde_json::to_string_pretty(&figure_json(id))? + "\n",
            };
            emit(out, &text)?;
            Ok(true)
        }
        Command::Similarity(s) => {
            let args =
                SimilarityArgs { k: s.k, offset: s.offset, t: s.t, window: s.window, m: s.m, samples: s.samples };
            let res = cmd_similarity(&args, &config)?;
            if let Some(path) = &s.dump {
                res.dump(path)?;
            }
            emit(out, &res.render(config.format.unwrap_or(Format::Json))?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qcalc: {e}");
            ExitCode::from(2)
        }
    }
}
