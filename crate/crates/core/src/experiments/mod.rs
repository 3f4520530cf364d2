//! Monte Carlo harness for the four simulation studies.
//!
//! A study is a grid over (K, ε_A, ε_y) with a number of independent
//! trials per point. Every trial draws a fresh Gaussian Φ, a fresh signal
//! and fresh perturbations from its own seeded stream, so results do not
//! depend on the worker count.

pub mod aggregate;
pub mod config;
pub mod csv;
pub mod plot;
pub mod runner;
pub mod seed;

use std::path::{Path, PathBuf};

pub use aggregate::{aggregate, Aggregate};
pub use config::{ExperimentConfig, Method, SignalModel, Study};
pub use plot::{emit_plot, render_svg, PlotKind};
pub use runner::{run_study, run_trial, TrialRecord};

use crate::error::Result;

/// Figure layout used for a study's default plot.
pub fn default_plot_kind(study: Study) -> PlotKind {
    match study {
        Study::SweepK => PlotKind::LineVsK,
        Study::SweepPerturbations => PlotKind::SurfaceVsEps,
        Study::SweepEpsAFixedNoise => PlotKind::LineVsEps,
        Study::CompressibleK => PlotKind::LineVsKCompressible,
    }
}

/// Files written by [`run_to_dir`].
#[derive(Debug, Clone)]
pub struct StudyOutputs {
    pub records: PathBuf,
    pub summary: PathBuf,
    pub plot: PathBuf,
    pub config: PathBuf,
}

/// Runs a study and writes `<study>.csv`, `<study>_summary.csv`,
/// `<study>.svg` and the effective `<study>.cfg` into `dir`.
pub fn run_to_dir(config: &ExperimentConfig, workers: usize, dir: &Path) -> Result<StudyOutputs> {
    let records = run_study(config, workers)?;
    let aggs = aggregate(&records)?;
    std::fs::create_dir_all(dir)?;
    let name = config.study.name();
    let out = StudyOutputs {
        records: dir.join(format!("{name}.csv")),
        summary: dir.join(format!("{name}_summary.csv")),
        plot: dir.join(format!("{name}.svg")),
        config: dir.join(format!("{name}.cfg")),
    };
    csv::emit_records(&records, &out.records)?;
    csv::emit_aggregates(&aggs, &out.summary)?;
    emit_plot(&aggs, default_plot_kind(config.study), &out.plot)?;
    std::fs::write(&out.config, config.to_text())?;
    Ok(out)
}
