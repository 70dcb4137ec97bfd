use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use framelab::{commands, CliError, KeyValues, RunConfig};

/// Frames, time-frequency transforms and coherent states from the command line.
///
/// Signals are CSV (`t,re,im` or `x1,..,re,im`) or raw64 (`.raw64`/`.bin`).
/// Exit status: 0 success, 1 a check failed, 2 usage or input error.
#[derive(Parser, Debug)]
#[command(name = "framelab", version)]
struct Cli {
    /// Input file.
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Output file (CSV, raw64 or plot matrix depending on the command).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tolerance override `suite.check=value`; repeatable.
    #[arg(long, global = true)]
    tol: Vec<String>,
    /// Command parameter `key=value`; repeatable.
    #[arg(long, global = true)]
    params: Vec<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Windowed Fourier spectrogram of a 1-D signal.
    Wft,
    /// Continuous wavelet scalogram of a 1-D signal.
    Cwt,
    /// Analytic signal f(x - iy) along one direction.
    Ast,
    /// Directional Hilbert transform.
    Hilbert,
    /// Windowed X-ray transform for one direction.
    Xray,
    /// Frame bounds and reciprocal frame of a frame file.
    Frames,
    /// Relativistic kernel norms and effective mass.
    Relcs,
    /// Spin coherent states.
    Spincs {
        #[arg(value_parser = ["overlap", "resolution", "expectations", "contract"])]
        mode: String,
    },
    /// Run verification suites.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

fn run(cli: Cli) -> Result<commands::Outcome, CliError> {
    let command = match &cli.cmd {
        Cmd::Wft => "wft",
        Cmd::Cwt => "cwt",
        Cmd::Ast => "ast",
        Cmd::Hilbert => "hilbert",
        Cmd::Xray => "xray",
        Cmd::Frames => "frames",
        Cmd::Relcs => "relcs",
        Cmd::Spincs { .. } => "spincs",
        Cmd::Verify { .. } => "verify",
    };
    let cfg = RunConfig {
        command: command.into(),
        input: cli.input,
        output: cli.out,
        seed: cli.seed,
        tol: KeyValues::parse(&cli.tol)?,
        params: KeyValues::parse(&cli.params)?,
    };
    match &cli.cmd {
        Cmd::Wft => commands::wft(&cfg),
        Cmd::Cwt => commands::cwt(&cfg),
        Cmd::Ast => commands::ast(&cfg),
        Cmd::Hilbert => commands::hilbert(&cfg),
        Cmd::Xray => commands::xray(&cfg),
        Cmd::Frames => commands::frames(&cfg),
        Cmd::Relcs => commands::relcs(&cfg),
        Cmd::Spincs { mode } => commands::spincs(&cfg, mode),
        Cmd::Verify { suite } => commands::verify(&cfg, suite),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            ExitCode::from(if o.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("framelab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
