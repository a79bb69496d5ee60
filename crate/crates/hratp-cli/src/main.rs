//! `hratp <experiment> [options]`: runs an error-comparison sweep and writes CSV.
//!
//! Exit codes: 0 on success, 1 on usage or I/O errors, 2 when `--strict` is given and some
//! cell violated the hypotheses of the accurate algorithm.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use hratp::experiment::{run_experiment, Experiment, ExperimentSpec, NodeScheme, Row, CSV_HEADER};
use hratp::oracle::DEFAULT_DIGITS;

const PRECISION_ENV: &str = "HRATP_PRECISION";

#[derive(Debug, Parser)]
#[command(name = "hratp", version, about = "Accurate vs. conventional errors for q-Abel matrices")]
struct Cli {
    /// conditioning, solve_collocation, solve_wronskian, eig_svd or inverse
    experiment: Experiment,

    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2", allow_hyphen_values = true)]
    q: Vec<f64>,

    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    alpha: f64,

    /// Polynomial degrees; matrices have order n + 1.
    #[arg(long, value_delimiter = ',', default_value = "5,10,15,20")]
    n: Vec<usize>,

    /// equidistant_pos, equidistant_neg, logarithmic or squared
    #[arg(long, default_value = "equidistant_pos")]
    nodes: NodeScheme,

    /// Wronskian evaluation point.
    #[arg(long, default_value_t = 50.0, allow_hyphen_values = true)]
    x: f64,

    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Random right-hand sides per cell; the largest error is reported.
    #[arg(long, default_value_t = 1)]
    trials: usize,

    /// Oracle digits. Defaults to $HRATP_PRECISION, then 200.
    #[arg(long)]
    precision: Option<u32>,

    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Exit with status 2 if any cell violates the hypotheses.
    #[arg(long)]
    strict: bool,
}

fn precision(cli: &Cli) -> Result<u32, String> {
    if let Some(p) = cli.precision {
        return Ok(p);
    }
    match std::env::var(PRECISION_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{PRECISION_ENV} must be a positive integer, got '{v}'")),
        Err(_) => Ok(DEFAULT_DIGITS),
    }
}

fn write_csv(rows: &[Row], sink: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let digits = precision(&cli)?;
    if digits == 0 {
        return Err("precision must be positive".into());
    }
    if cli.q.is_empty() || cli.n.is_empty() {
        return Err("--q and --n need at least one value".into());
    }
    let spec = ExperimentSpec {
        experiment: cli.experiment,
        q_list: cli.q,
        alpha: cli.alpha,
        n_list: cli.n,
        node_scheme: cli.nodes,
        x: cli.x,
        seed: cli.seed,
        trials: cli.trials.max(1),
        digits,
    };
    let rows = run_experiment(&spec);
    let written = match &cli.out {
        Some(path) => std::fs::File::create(path)
            .map_err(|e| format!("cannot create {}: {e}", path.display()))
            .and_then(|f| write_csv(&rows, f).map_err(|e| e.to_string())),
        None => write_csv(&rows, std::io::stdout().lock()).map_err(|e| e.to_string()),
    };
    written?;
    let violations = rows.iter().filter(|r| r.is_violation()).count();
    if violations > 0 {
        eprintln!("{violations} cell(s) violate the hypotheses of the accurate algorithm");
        if cli.strict {
            return Ok(ExitCode::from(2));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
