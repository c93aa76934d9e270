use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use ams_detect::TrialConfig;
use ams_detect_cli::config::{apply, load_config, validate};
use ams_detect_cli::sweep::trial_seed;
use ams_detect_cli::{measure_runtime, output, sweep_depth, sweep_tau, HarnessError, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "ams-detect",
    version,
    about = "Zombie-host detection with AMS F2 sketches"
)]
struct Cli {
    #[command(flatten)]
    opts: CommonOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// key=value configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Trials averaged per sweep point
    #[arg(long, global = true)]
    runs: Option<u64>,
    #[arg(long, global = true)]
    hosts: Option<u64>,
    #[arg(long, global = true)]
    hash_functions: Option<usize>,
    #[arg(long, global = true)]
    switches: Option<u64>,
    #[arg(long, global = true)]
    headers: Option<u64>,
    #[arg(long, global = true)]
    attackers: Option<u64>,
    #[arg(long, global = true)]
    packets: Option<u64>,
    #[arg(long, global = true)]
    tau: Option<f64>,
    #[arg(long, global = true)]
    pool_size: Option<u64>,
    #[arg(long, global = true)]
    p_unique: Option<f64>,
    /// Controller capacity per window (default: packets * switches)
    #[arg(long, global = true)]
    controller_capacity: Option<u64>,
}

#[derive(Args)]
struct DepthRange {
    /// Explicit comma-separated depths; overrides --d-min/--d-max
    #[arg(long, value_delimiter = ',')]
    depths: Option<Vec<usize>>,
    #[arg(long)]
    d_min: Option<usize>,
    #[arg(long)]
    d_max: Option<usize>,
}

impl DepthRange {
    fn resolve(&self, default_max: usize) -> Vec<usize> {
        match &self.depths {
            Some(d) => d.clone(),
            None => (self.d_min.unwrap_or(1)..=self.d_max.unwrap_or(default_max)).collect(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// TP/TN rates for tau = M-5 ..= M+5
    SweepTau,
    /// TP/TN rates at tau = M for a range of depths (default 1..=100)
    SweepDepth(DepthRange),
    /// Sketching time per trial workload for a range of depths (default 1..=500)
    Runtime(DepthRange),
    /// One trial with a per-host dump
    Trial {
        /// Trial index under the master seed
        #[arg(long, default_value_t = 0)]
        trial: u64,
    },
}

fn build_config(opts: &CommonOpts) -> Result<TrialConfig> {
    let mut config = match &opts.config {
        Some(path) => load_config(path)?,
        None => TrialConfig::default(),
    };
    let overrides: [(&str, Option<String>); 11] = [
        ("seed", opts.seed.map(|v| v.to_string())),
        ("runs", opts.runs.map(|v| v.to_string())),
        ("hosts", opts.hosts.map(|v| v.to_string())),
        ("hash_functions", opts.hash_functions.map(|v| v.to_string())),
        ("switches", opts.switches.map(|v| v.to_string())),
        ("headers", opts.headers.map(|v| v.to_string())),
        ("attackers", opts.attackers.map(|v| v.to_string())),
        ("packets", opts.packets.map(|v| v.to_string())),
        ("tau", opts.tau.map(|v| v.to_string())),
        ("pool_size", opts.pool_size.map(|v| v.to_string())),
        ("p_unique", opts.p_unique.map(|v| v.to_string())),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            apply(&mut config, key, &v).map_err(HarnessError::Invalid)?;
        }
    }
    if opts.controller_capacity.is_some() {
        config.controller_capacity = opts.controller_capacity;
    }
    validate(&config)?;
    Ok(config)
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<()> {
    let config = build_config(&cli.opts)?;
    match cli.command {
        Command::SweepTau => {
            let sweep = sweep_tau(&config)?;
            output::write_accuracy(&sweep, open_out(&cli.opts.out)?)
        }
        Command::SweepDepth(range) => {
            let sweep = sweep_depth(&config, &range.resolve(100))?;
            output::write_accuracy(&sweep, open_out(&cli.opts.out)?)
        }
        Command::Runtime(range) => {
            let sweep = measure_runtime(&config, &range.resolve(500))?;
            output::write_runtime(&sweep, open_out(&cli.opts.out)?)
        }
        Command::Trial { trial } => {
            let outcome = ams_detect::run_trial(&config, trial_seed(config.master_seed, trial))?;
            output::write_trial(&outcome, open_out(&cli.opts.out)?)?;
            let c = outcome.confusion;
            let m = &outcome.controller;
            eprintln!(
                "tp={} tn={} fp={} fn={} load={} capacity={} attack_successful={}",
                c.tp, c.tn, c.fp, c.fn_, m.load, m.capacity, m.attack_successful
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
