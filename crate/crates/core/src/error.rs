//! Error type shared by all modules of the crate.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Validation and domain errors.
///
/// Every variant names the violated invariant in its `Display` output so
/// front ends can surface the diagnostic verbatim.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Type-I bound outside the open interval (0, 1).
    AlphaOutOfRange { alpha: f64 },
    /// Type-II bound outside the open interval (0, 1).
    BetaOutOfRange { beta: f64 },
    /// alpha + beta >= 1 degenerates the Wald thresholds.
    BudgetDegenerate { alpha: f64, beta: f64 },
    /// A parameter that must be finite was NaN or infinite.
    NonFinite { name: &'static str, value: f64 },
    /// A probability argument fell outside [0, 1].
    ProbabilityOutOfRange { name: &'static str, value: f64 },
    /// Standard deviation must be strictly positive.
    SigmaNotPositive { sigma: f64 },
    /// The two hypothesis means coincide; the log-likelihood ratio is
    /// identically zero.
    DegenerateHypotheses { theta: f64 },
    /// The number of samples per test must be strictly positive.
    SampleCountNotPositive { n0: f64 },
    /// A sequential run needs a horizon of at least one step.
    ZeroHorizon,
    /// The increment source ended before the horizon and before a crossing.
    IncrementsExhausted { consumed: usize, horizon: usize },
    /// Beam-splitter coefficients must satisfy T + R = 1 with T, R in [0, 1].
    BeamSplitterNotUnitary {
        transmissivity: f64,
        reflectivity: f64,
    },
    /// A copy budget of zero makes every protocol vacuous.
    ZeroCopies,
    /// Batch size outside 1..=n.
    BatchSizeOutOfRange { l: u32, n: u32 },
    /// theta0 = -theta1 makes the batched success probability independent of
    /// the batch size; the closed-form optimum and plateau bounds have a pole.
    SymmetricHypotheses { theta0: f64, theta1: f64 },
    /// State overlap outside [0, 1].
    OverlapOutOfRange { overlap: f64 },
    /// The batch size must divide the copy budget exactly.
    BatchNotDivisor { copies: u32, batch: u32 },
    /// A simulation needs at least one trajectory.
    ZeroTrajectories,
    /// Hypothesis indices are 0 and 1.
    HypothesisIndexOutOfRange { index: u8 },
    /// Qubit state angle outside [0, pi/4].
    AngleOutOfRange { angle: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AlphaOutOfRange { alpha } => {
                write!(f, "alpha must lie in (0, 1), got {alpha}")
            }
            Self::BetaOutOfRange { beta } => {
                write!(f, "beta must lie in (0, 1), got {beta}")
            }
            Self::BudgetDegenerate { alpha, beta } => {
                write!(
                    f,
                    "alpha + beta must be < 1, got alpha = {alpha}, beta = {beta}"
                )
            }
            Self::NonFinite { name, value } => {
                write!(f, "{name} must be finite, got {value}")
            }
            Self::ProbabilityOutOfRange { name, value } => {
                write!(f, "{name} must lie in [0, 1], got {value}")
            }
            Self::SigmaNotPositive { sigma } => {
                write!(f, "sigma must be > 0, got {sigma}")
            }
            Self::DegenerateHypotheses { theta } => {
                write!(
                    f,
                    "theta0 and theta1 must differ, both are {theta} (degenerate model)"
                )
            }
            Self::SampleCountNotPositive { n0 } => {
                write!(f, "sample count n0 must be > 0, got {n0}")
            }
            Self::ZeroHorizon => write!(f, "horizon must be >= 1"),
            Self::IncrementsExhausted { consumed, horizon } => {
                write!(
                    f,
                    "increment source exhausted after {consumed} of {horizon} samples \
                     without a boundary crossing"
                )
            }
            Self::BeamSplitterNotUnitary {
                transmissivity,
                reflectivity,
            } => {
                write!(
                    f,
                    "beam splitter must satisfy T + R = 1 with T, R in [0, 1], \
                     got T = {transmissivity}, R = {reflectivity}"
                )
            }
            Self::ZeroCopies => write!(f, "number of copies must be >= 1"),
            Self::BatchSizeOutOfRange { l, n } => {
                write!(f, "batch size must satisfy 1 <= l <= {n}, got l = {l}")
            }
            Self::SymmetricHypotheses { theta0, theta1 } => {
                write!(
                    f,
                    "theta0 = -theta1 ({theta0}, {theta1}): the quantity is independent \
                     of the batch size and the closed form has a pole"
                )
            }
            Self::OverlapOutOfRange { overlap } => {
                write!(f, "overlap must lie in [0, 1], got {overlap}")
            }
            Self::BatchNotDivisor { copies, batch } => {
                write!(f, "batch size {batch} must divide the copy budget {copies}")
            }
            Self::ZeroTrajectories => write!(f, "trajectory count must be >= 1"),
            Self::HypothesisIndexOutOfRange { index } => {
                write!(f, "hypothesis index must be 0 or 1, got {index}")
            }
            Self::AngleOutOfRange { angle } => {
                write!(f, "state angle must lie in [0, pi/4], got {angle}")
            }
        }
    }
}

impl std::error::Error for Error {}
