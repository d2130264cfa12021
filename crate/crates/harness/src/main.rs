#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hfb_harness::report::{emit_report, rows, to_json, write};
use hfb_harness::run::{run_all, sweep_n, validate_linear};
use hfb_harness::selftest::run_selftest;
use hfb_harness::{HarnessError, ScenarioConfig};

#[derive(Parser)]
#[command(name = "hfb", version, about = "HFB simulations, N sweeps and linear-estimate validation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// TOML scenario file; defaults apply to missing keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads for independent scenarios.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Overrides the seed of the config.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve every N of the scenario and write its norms.
    Simulate(Common),
    /// Evolve every N and write the growth summary across N.
    SweepN(Common),
    /// Solve the linear model on manufactured data and evaluate the estimates.
    ValidateLinear(Common),
    /// Run the brute-force oracle checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load(c: &Common) -> Result<ScenarioConfig, HarnessError> {
    let mut cfg = match &c.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| HarnessError::Io(format!("{}: {e}", p.display())))?;
            ScenarioConfig::from_toml(&text)?
        }
        None => ScenarioConfig::default(),
    };
    if let Some(seed) = c.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn outputs(cfg: &ScenarioConfig, out: &Path) -> (PathBuf, PathBuf) {
    (out.join(&cfg.csv), out.join(&cfg.json))
}

fn execute(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Simulate(c) => {
            let cfg = load(&c)?;
            let results = run_all(&cfg, c.jobs)?;
            let (csv, json) = outputs(&cfg, &c.out);
            emit_report(&rows(&results), &csv, &json)?;
            println!("wrote {} and {}", csv.display(), json.display());
        }
        Command::SweepN(c) => {
            let cfg = load(&c)?;
            let (results, summary) = sweep_n(&cfg, c.jobs)?;
            let (csv, json) = outputs(&cfg, &c.out);
            emit_report(&rows(&results), &csv, &json)?;
            write(&c.out.join("summary.json"), &to_json(&summary))?;
            for (name, e) in &summary.growth.entries {
                println!("{name:<16} max/min {:.6}", e.ratio);
            }
        }
        Command::ValidateLinear(c) => {
            let cfg = load(&c)?;
            let summary = validate_linear(&cfg, c.jobs)?;
            write(&c.out.join("linear.json"), &to_json(&summary))?;
            for (name, spread) in &summary.spreads {
                match spread {
                    Some(s) => println!("{name:<20} max/min {s:.6}"),
                    None => println!("{name:<20} degenerate"),
                }
            }
        }
        Command::Selftest { seed } => {
            let cases = run_selftest(seed);
            for c in &cases {
                println!("{}", c.line());
            }
            if cases.iter().any(|c| !c.passed) {
                return Err(HarnessError::Numerical("selftest failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
