//! Batch front door for the diplexed-TWPA toolkit: design synthesis, gain
//! simulation, noise fitting, and line calibration, each driven by a JSON
//! manifest and emitting plot-ready CSV plus a JSON summary.

mod calibrate;
mod gain;
mod manifest;
mod noise;
mod repro;
mod synth;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "dtwpa", version, about = "Diplexed TWPA design and verification toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// JSON run manifest; required for every subcommand except paper-repro.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Seed for Monte-Carlo resampling and synthetic data generation.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for internal sweeps; defaults to all cores.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Synthesize the diplexer, report component values, verify scattering.
    SynthDiplexer(Common),
    /// Simulate pump-off and pump-on response of the assembled device.
    Gain(Common),
    /// Fit chain gain/noise (Eq. 1) and the amplifier/chain split (Eq. 3).
    NoiseFit(Common),
    /// Input-line attenuation (Eq. 6) and pump-power bookkeeping.
    Calibrate(Common),
    /// Chain all four workflows on built-in paper-style inputs.
    PaperRepro(Common),
}

fn require_manifest(c: &Common) -> anyhow::Result<&PathBuf> {
    c.manifest
        .as_ref()
        .ok_or_else(|| anyhow::anyhow!("this subcommand requires --manifest <path>"))
}

fn run(cli: Cli) -> anyhow::Result<Vec<PathBuf>> {
    let common = match &cli.cmd {
        Cmd::SynthDiplexer(c)
        | Cmd::Gain(c)
        | Cmd::NoiseFit(c)
        | Cmd::Calibrate(c)
        | Cmd::PaperRepro(c) => c,
    };
    if let Some(n) = common.threads {
        anyhow::ensure!(n >= 1, "--threads must be >= 1");
        // Ignore the error if a global pool already exists (tests).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    std::fs::create_dir_all(&common.out)?;
    match &cli.cmd {
        Cmd::SynthDiplexer(c) => synth::run(dtwpa::io::read_json(require_manifest(c)?)?, c),
        Cmd::Gain(c) => gain::run(dtwpa::io::read_json(require_manifest(c)?)?, c),
        Cmd::NoiseFit(c) => noise::run(dtwpa::io::read_json(require_manifest(c)?)?, c),
        Cmd::Calibrate(c) => calibrate::run(dtwpa::io::read_json(require_manifest(c)?)?, c),
        Cmd::PaperRepro(c) => repro::run(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(written) => {
            for p in written {
                println!("wrote {}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
