//! Distribution-agnostic sequential probability ratio test.
//!
//! The engine accumulates log-likelihood-ratio increments z_i into the
//! martingale Z_n = z_1 + ... + z_n and stops at the first step where Z_n
//! leaves the corridor (log B, log A). Thresholds use the Wald
//! approximations log A = log((1-beta)/alpha), log B = log(beta/(1-alpha))
//! with no excess-over-boundary correction; every closed form in the crate
//! assumes exactly these values. A value landing exactly on a threshold
//! stops (closed stopping sets), a probability-zero event for continuous
//! increment distributions.

use crate::error::{Error, Result};

/// Which hypothesis generated the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    H0,
    H1,
}

impl Hypothesis {
    /// The conventional index: 0 for H0, 1 for H1.
    pub fn index(self) -> u8 {
        match self {
            Self::H0 => 0,
            Self::H1 => 1,
        }
    }

    pub fn from_index(index: u8) -> Result<Self> {
        match index {
            0 => Ok(Self::H0),
            1 => Ok(Self::H1),
            _ => Err(Error::HypothesisIndexOutOfRange { index }),
        }
    }
}

/// Bounds on the Type-I and Type-II error probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBudget {
    alpha: f64,
    beta: f64,
}

impl ErrorBudget {
    /// Requires `alpha`, `beta` in (0, 1) with `alpha + beta < 1`; otherwise
    /// the stopping corridor collapses.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 || alpha >= 1.0 {
            return Err(Error::AlphaOutOfRange { alpha });
        }
        if !beta.is_finite() || beta <= 0.0 || beta >= 1.0 {
            return Err(Error::BetaOutOfRange { beta });
        }
        if alpha + beta >= 1.0 {
            return Err(Error::BudgetDegenerate { alpha, beta });
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// The stopping bounds of the test, on the log scale.
///
/// `log_a` is the upper bound (accept H0 at or above it), `log_b` the lower
/// bound (accept H1 at or below it). For any valid [`ErrorBudget`] the
/// corridor satisfies `log_b < 0 < log_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaldThresholds {
    log_a: f64,
    log_b: f64,
}

impl WaldThresholds {
    /// Builds thresholds directly, without the budget-derived guarantees.
    ///
    /// Useful for driving the engine with hand-picked or infinite bounds;
    /// callers are responsible for `log_b <= log_a`.
    pub fn new_unchecked(log_a: f64, log_b: f64) -> Self {
        Self { log_a, log_b }
    }

    pub fn log_a(&self) -> f64 {
        self.log_a
    }

    pub fn log_b(&self) -> f64 {
        self.log_b
    }
}

/// Computes log A = log((1-beta)/alpha) and log B = log(beta/(1-alpha)).
pub fn wald_thresholds(budget: &ErrorBudget) -> WaldThresholds {
    WaldThresholds {
        log_a: ((1.0 - budget.beta) / budget.alpha).ln(),
        log_b: (budget.beta / (1.0 - budget.alpha)).ln(),
    }
}

/// Decision after observing the current value of the martingale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SprtVerdict {
    /// Z_n >= log A.
    Accept0,
    /// Z_n <= log B.
    Accept1,
    /// Strictly inside the corridor; keep sampling.
    Continue,
}

/// Evaluates the stopping rule at a single step.
pub fn sprt_step(current_z: f64, thresholds: &WaldThresholds) -> SprtVerdict {
    if current_z >= thresholds.log_a {
        SprtVerdict::Accept0
    } else if current_z <= thresholds.log_b {
        SprtVerdict::Accept1
    } else {
        SprtVerdict::Continue
    }
}

/// One realized path of the martingale.
#[derive(Debug, Clone, PartialEq)]
pub struct SprtTrajectory {
    /// Cumulative values Z_1..Z_m, up to and including the stopping step
    /// (or the full horizon when no boundary was crossed).
    pub z_path: Vec<f64>,
    /// 1-based step at which the test stopped; `None` when the horizon was
    /// reached inside the corridor.
    pub stop_index: Option<usize>,
    /// Verdict at termination; `Continue` for horizon-truncated runs.
    pub verdict: SprtVerdict,
    /// The hypothesis that generated the increments, when known.
    pub truth: Option<Hypothesis>,
}

/// Runs the test over lazily consumed increments until a boundary crossing
/// or the horizon.
///
/// Horizon-truncated runs keep the verdict `Continue` rather than forcing a
/// decision. Errors with [`Error::IncrementsExhausted`] if the source ends
/// early without a crossing.
pub fn run_sprt<I>(
    increments: I,
    thresholds: &WaldThresholds,
    horizon: usize,
) -> Result<SprtTrajectory>
where
    I: IntoIterator<Item = f64>,
{
    if horizon == 0 {
        return Err(Error::ZeroHorizon);
    }
    let mut source = increments.into_iter();
    let mut z_path = Vec::new();
    let mut z = 0.0;
    for step in 1..=horizon {
        let increment = source.next().ok_or(Error::IncrementsExhausted {
            consumed: step - 1,
            horizon,
        })?;
        z += increment;
        z_path.push(z);
        let verdict = sprt_step(z, thresholds);
        if verdict != SprtVerdict::Continue {
            return Ok(SprtTrajectory {
                z_path,
                stop_index: Some(step),
                verdict,
                truth: None,
            });
        }
    }
    Ok(SprtTrajectory {
        z_path,
        stop_index: None,
        verdict: SprtVerdict::Continue,
        truth: None,
    })
}

/// Equal-prior total success probability (p0 + p1) / 2.
pub fn total_success(p0_accept: f64, p1_accept: f64) -> Result<f64> {
    for (name, value) in [("p0_accept", p0_accept), ("p1_accept", p1_accept)] {
        if !(0.0..=1.0).contains(&value) || value.is_nan() {
            return Err(Error::ProbabilityOutOfRange { name, value });
        }
    }
    Ok(0.5 * p0_accept + 0.5 * p1_accept)
}
