//! `gyro-afe` command-line front end.
//!
//! ```text
//! gyro-afe <analyze|sweep|compare|simulate> --config <path> [--out <dir>] [--seed <n>]
//! ```
//!
//! Exit codes: 0 on success, 1 on a usage or configuration error, 2 on an
//! I/O error. The output directory is `--out`, else `$GYRO_AFE_OUT`, else
//! `[output] dir` (relative to the config file), else `out`.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::analysis::{compare_topologies, noise_budget, thermal_sweep};
use crate::config::{parse_config, RunConfig};
use crate::error::{Error, Result};
use crate::montecarlo::{estimate_psd, simulate};
use crate::report;

pub const OUT_ENV: &str = "GYRO_AFE_OUT";

// println! that tolerates a closed stdout.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Debug, Parser)]
#[command(
    name = "gyro-afe",
    version,
    about = "Gyro analog front-end noise and drift analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Run configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory for CSV files.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `[sim] seed`.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Noise budget of the chain topology -> budget.csv
    Analyze(Common),
    /// Gain and output over the temperature grid -> sweep.csv
    Sweep(Common),
    /// Rank the five gain-normalized topologies -> compare.csv
    Compare(Common),
    /// Seeded time-domain run -> trace.csv, psd.csv
    Simulate(Common),
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Analyze(c)
            | Command::Sweep(c)
            | Command::Compare(c)
            | Command::Simulate(c) => c,
        }
    }
}

fn output_dir(common: &Common, cfg: &RunConfig) -> PathBuf {
    if let Some(out) = &common.out {
        return out.clone();
    }
    if let Some(env) = std::env::var_os(OUT_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(env);
    }
    match &cfg.output_dir {
        Some(dir) => common
            .config
            .parent()
            .unwrap_or_else(|| Path::new(""))
            .join(dir),
        None => PathBuf::from("out"),
    }
}

fn execute(command: &Command) -> Result<Vec<PathBuf>> {
    let common = command.common();
    let text =
        fs::read_to_string(&common.config).map_err(|e| Error::io(common.config.clone(), e))?;
    let mut cfg = parse_config(&text)?;
    if let Some(seed) = common.seed {
        cfg.sim.seed = seed;
    }
    let dir = output_dir(common, &cfg);
    let mut files: Vec<(&str, String)> = Vec::new();
    match command {
        Command::Analyze(_) => {
            let chain = cfg.chain_config()?;
            let b = noise_budget(&chain, &cfg.operating_point(), cfg.chain.noise_bandwidth)?;
            say!(
                "{}: {:e} V/rtHz at {:e} Hz, rate resolution {:e} rad/s/rtHz, SNR {:e} in {:e} Hz",
                cfg.chain.topology,
                b.breakdown.total_rss,
                b.frequency,
                b.rate_resolution,
                b.snr,
                b.bandwidth
            );
            files.push(("budget.csv", report::budget_csv(&b)));
        }
        Command::Sweep(_) => {
            let chain = cfg.chain_config()?;
            let s = &cfg.sweep;
            let series = thermal_sweep(&chain, s.t_min, s.t_max, s.step, cfg.sweep_rate()?)?;
            say!(
                "{}: drift {:e} V ({:e} ppm) over {}..{} °C",
                cfg.chain.topology,
                series.total_drift_volts,
                series.total_drift_ppm,
                s.t_min,
                s.t_max
            );
            files.push(("sweep.csv", report::sweep_csv(&series)));
        }
        Command::Compare(_) => {
            let rows = compare_topologies(&cfg.compare_base(), &cfg.compare_entries()?)?;
            for r in &rows {
                say!(
                    "{}: {:e} V/rtHz, {:e} ppm",
                    r.name,
                    r.noise_density,
                    r.drift_ppm
                );
            }
            files.push(("compare.csv", report::compare_csv(&rows)));
        }
        Command::Simulate(_) => {
            let chain = cfg.chain_config()?;
            let run = simulate(&chain, &cfg.sim_options())?;
            let psd = estimate_psd(&run, cfg.sim.segment_len, cfg.sim.overlap)?;
            say!(
                "{}: {} samples, seed {}, {} segments",
                cfg.chain.topology,
                run.trace.len(),
                run.seed,
                psd.segment_count
            );
            files.push(("trace.csv", report::trace_csv(&run)));
            files.push(("psd.csv", report::psd_csv(&psd)));
        }
    }
    files
        .into_iter()
        .map(|(name, contents)| {
            report::write_file(&dir, name, &contents)?;
            Ok(dir.join(name))
        })
        .collect()
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(paths) => {
            for p in paths {
                say!("wrote {}", p.display());
            }
            0
        }
        Err(e @ Error::Io { .. }) => {
            eprintln!("error: {e}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
