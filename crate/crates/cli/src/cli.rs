//! Argument definitions. Every command's parameters derive serde as well as
//! clap so a run manifest can round-trip them exactly.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "sprt-coherent",
    version,
    about = "Sequential testing of two coherent states with batched collective measurements",
    after_help = "Exit codes: 0 success, 2 parameter error, 3 I/O error.\n\
                  SPRT_COHERENT_THREADS caps simulation parallelism; results do not depend on it."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Closed-form p0, p1, p_s per batch size (CSV columns: l,p0,p1,ps)
    ClosedForm(ClosedFormArgs),
    /// Optimize the batch size; reports case, grid argmax and closed-form estimates
    Optimize(OptimizeArgs),
    /// Simulate martingale trajectories; writes mean path, summary and optional per-trajectory paths
    Simulate(SimulateArgs),
    /// Unambiguous-discrimination baseline: 1 - c^N, with and without batching
    Unambiguous(UnambiguousArgs),
    /// Re-run a command from a previously written manifest
    Replay(ReplayArgs),
}

/// Hypothesis flags shared by every probability command.
#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct HypothesisArgs {
    /// Total copy budget N
    #[arg(long)]
    pub n: u32,
    /// Quadrature mean under hypothesis 0 (real part of the first amplitude)
    #[arg(long, allow_negative_numbers = true)]
    pub theta0: f64,
    /// Quadrature mean under hypothesis 1
    #[arg(long, allow_negative_numbers = true)]
    pub theta1: f64,
    /// Type-I error bound, in (0, 1)
    #[arg(long)]
    pub alpha: f64,
    /// Type-II error bound, in (0, 1)
    #[arg(long)]
    pub beta: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[command(group = clap::ArgGroup::new("batch").required(true).multiple(false))]
pub struct ClosedFormArgs {
    #[command(flatten)]
    pub hypothesis: HypothesisArgs,
    /// Single batch size to evaluate
    #[arg(long, group = "batch")]
    pub l: Option<u32>,
    /// Inclusive batch-size range START:END, e.g. 1:100
    #[arg(long, value_name = "START:END", group = "batch")]
    pub l_range: Option<String>,
    /// Emit JSON instead of CSV
    #[arg(long)]
    pub json: bool,
    /// Write the table to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the run manifest (defaults next to the output file)
    #[arg(long)]
    pub manifest_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub hypothesis: HypothesisArgs,
    /// Write the JSON report to a file as well as stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the run manifest (defaults next to the output file)
    #[arg(long)]
    pub manifest_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub hypothesis: HypothesisArgs,
    /// Batch size per step
    #[arg(long)]
    pub l: u32,
    /// Which hypothesis generates the data (0 or 1)
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub truth: u8,
    /// Number of independent trajectories
    #[arg(long)]
    pub trajectories: u64,
    /// RNG seed; required, there is no wall-clock default
    #[arg(long)]
    pub seed: u64,
    /// Print the summary JSON to stdout instead of the mean-path CSV
    #[arg(long)]
    pub json: bool,
    /// Write the mean-path CSV (n,z_mean) here
    #[arg(long)]
    pub mean_path_out: Option<PathBuf>,
    /// Write per-trajectory full-horizon paths (trajectory,step,z) here
    #[arg(long)]
    pub paths_out: Option<PathBuf>,
    /// Write the summary JSON here
    #[arg(long)]
    pub summary_out: Option<PathBuf>,
    /// Where to write the run manifest (defaults next to the first output file)
    #[arg(long)]
    pub manifest_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[command(group = clap::ArgGroup::new("pair").required(true).multiple(false))]
pub struct UnambiguousArgs {
    /// State overlap c in [0, 1]
    #[arg(long, group = "pair")]
    pub overlap: Option<f64>,
    /// State angle theta in [0, pi/4]; overlap is cos(2 theta)
    #[arg(long, group = "pair")]
    pub theta_angle: Option<f64>,
    /// Total copy budget N
    #[arg(long)]
    pub n: u32,
    /// Batch size; must divide N
    #[arg(long)]
    pub l: u32,
    /// Emit CSV instead of the human-readable report
    #[arg(long)]
    pub csv: bool,
    /// Emit JSON instead of the human-readable report
    #[arg(long)]
    pub json: bool,
    /// Write the output to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the run manifest (defaults next to the output file)
    #[arg(long)]
    pub manifest_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// Manifest file produced by a previous run
    #[arg(long)]
    pub manifest: PathBuf,
}
