use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use kerramp_cli::{parse_config, run, Command};

/// Two-mode Kerr amplifier: operating points, sweeps and noise analysis.
#[derive(Parser)]
#[command(name = "kerramp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output CSV path; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// RNG seed for mc-validate, overriding [mc] seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "KERRAMP_THREADS")]
    threads: Option<usize>,

    /// Probe frequency, overriding [probe] omega.
    #[arg(long, global = true, allow_hyphen_values = true)]
    omega: Option<f64>,
}

fn execute(cli: &Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let text = match &cli.config {
        Some(path) => fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?,
        None => String::new(),
    };
    let mut cfg = parse_config(&text).with_context(|| match &cli.config {
        Some(path) => format!("in {}", path.display()),
        None => "no --config given".to_string(),
    })?;
    if let Some(seed) = cli.seed {
        cfg.mc.seed = seed;
    }
    if let Some(omega) = cli.omega {
        cfg.probe.omega = omega;
        cfg.validate()?;
    }
    let table = run(cli.command, &cfg)?;
    match &cli.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            table.write_csv(&mut w)?;
            w.flush()?;
        }
        None => table.write_csv(io::stdout().lock())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
