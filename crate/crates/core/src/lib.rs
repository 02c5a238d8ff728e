//! Sequential discrimination of two coherent states with a finite copy
//! budget.
//!
//! The crate models the whole pipeline: a Wald sequential probability ratio
//! test over Gaussian homodyne outcomes, beam-splitter accumulation that
//! concentrates batches of l copies into one mode, closed-form probabilities
//! that the test statistic lies beyond a threshold after N/l steps, the
//! optimization of the batch size l, an unambiguous-discrimination baseline
//! where batching provably changes nothing, and a seeded Monte Carlo harness
//! that validates every closed form.
//!
//! Entry points:
//!
//! - [`sprt`]: thresholds, stopping rule, trajectories;
//! - [`gaussian`]: the z statistic and the horizon threshold probabilities;
//! - [`optics`]: beam splitters, accumulation chains, homodyne statistics;
//! - [`batch`]: success probabilities per batch size, case classification,
//!   the closed-form optimum and plateau bounds, grid optimization;
//! - [`unambiguous`]: the 1 - c^N baseline;
//! - [`montecarlo`]: reproducible simulation with binomial error bars.

pub mod batch;
pub mod erf;
pub mod error;
pub mod gaussian;
pub mod montecarlo;
pub mod optics;
pub mod sprt;
pub mod unambiguous;

pub use batch::{
    classify_case, l_bounds, l_opt_closed_form, optimize_batch, recommended_batch_size,
    success_probability, y_a, y_b, BatchProblem, CaseClass, SuccessReport,
};
pub use erf::erf;
pub use error::{Error, Result};
pub use gaussian::{
    gaussian_z, horizon_stop_probabilities, increment_moments, stop_prob_h0, stop_prob_h1,
    GaussianHypotheses, HorizonStopProbabilities,
};
pub use montecarlo::{
    estimate_first_crossing_prob, estimate_horizon_prob, mean_path, sample_batched_trajectory,
    simulate, trajectory_path, EstimateWithCI, SimulationConfig, SimulationSummary,
};
pub use optics::{
    accumulate, accumulation_chain, batch_hypotheses, beam_splitter, homodyne_model_for,
    BeamSplitterSpec, CoherentAmplitude, HomodyneModel,
};
pub use sprt::{
    run_sprt, sprt_step, total_success, wald_thresholds, ErrorBudget, Hypothesis, SprtTrajectory,
    SprtVerdict, WaldThresholds,
};
pub use unambiguous::{batched_success_unambiguous, success_unambiguous, QubitPair};
