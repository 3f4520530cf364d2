use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use greedy_cs::experiments::{self, csv, ExperimentConfig, PlotKind, Study};
use greedy_cs::verify::{self, FigureSettings};

#[derive(Parser)]
#[command(name = "greedy-cs", version, about = "Greedy sparse recovery under perturbations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation study and write records, summary, plot and config.
    Run {
        #[arg(long)]
        study: String,
        /// key = value overrides on top of the study preset
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// 128×512 instead of 512×2048, with K scaled accordingly
        #[arg(long)]
        small: bool,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Render an SVG from a records or summary CSV.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        kind: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite and print one line per criterion.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        workers: Option<usize>,
        /// Monte Carlo trials per grid point for the figure suite
        #[arg(long)]
        trials: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Invariants,
    Figures,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn run(cli: Cli) -> greedy_cs::Result<bool> {
    match cli.command {
        Command::Run { study, config, out, small, workers, seed } => {
            let study = Study::parse(&study)?;
            let mut base = ExperimentConfig::preset(study);
            if small {
                base = base.small();
            }
            let mut cfg = match config {
                Some(path) => ExperimentConfig::parse_onto(base, &std::fs::read_to_string(&path)?)?,
                None => base,
            };
            if let Some(seed) = seed {
                cfg.master_seed = seed;
            }
            cfg.validate()?;
            let files = experiments::run_to_dir(&cfg, workers.unwrap_or_else(default_workers), &out)?;
            for p in [&files.records, &files.summary, &files.plot, &files.config] {
                println!("{}", p.display());
            }
            Ok(true)
        }
        Command::Plot { input, kind, out } => {
            let kind = PlotKind::parse(&kind)?;
            let aggs = csv::load_aggregates(&input)?;
            experiments::emit_plot(&aggs, kind, &out)?;
            println!("{}", out.display());
            Ok(true)
        }
        Command::Verify { suite, workers, trials } => {
            let results = match suite {
                Suite::Invariants => verify::invariants_suite()?,
                Suite::Figures => {
                    let mut settings = FigureSettings::default();
                    if let Some(w) = workers {
                        settings.workers = w;
                    }
                    if let Some(t) = trials {
                        settings.trials = t;
                        settings.grid_trials = t;
                    }
                    verify::figures_suite(settings)?
                }
            };
            for r in &results {
                println!("{r}");
            }
            Ok(results.iter().all(|r| r.passed))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
