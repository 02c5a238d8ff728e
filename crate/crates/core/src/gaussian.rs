//! Gaussian two-hypothesis model.
//!
//! Observations are N(theta_i, sigma^2) under hypothesis i. The module
//! provides the per-sample log-likelihood ratio and the closed-form
//! probabilities that the accumulated statistic Z lies beyond a Wald
//! threshold after n0 samples: the sum of n0 draws is itself Gaussian with
//! mean n0*theta and variance n0*sigma^2, so the threshold event reduces to
//! an error-function expression.
//!
//! `n0` is a positive real, not an integer: batched protocols substitute
//! n0 = N/l, which need not be integral, and the closed forms are analytic
//! in n0.

use crate::erf::erf;
use crate::error::{Error, Result};
use crate::sprt::{Hypothesis, WaldThresholds};

/// The pair of hypothesis means and their common standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianHypotheses {
    theta0: f64,
    theta1: f64,
    sigma: f64,
}

impl GaussianHypotheses {
    /// Requires finite parameters, `sigma > 0` and `theta0 != theta1`
    /// (equal means make the log-likelihood ratio identically zero).
    pub fn new(theta0: f64, theta1: f64, sigma: f64) -> Result<Self> {
        for (name, value) in [("theta0", theta0), ("theta1", theta1), ("sigma", sigma)] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        if sigma <= 0.0 {
            return Err(Error::SigmaNotPositive { sigma });
        }
        if theta0 == theta1 {
            return Err(Error::DegenerateHypotheses { theta: theta0 });
        }
        Ok(Self {
            theta0,
            theta1,
            sigma,
        })
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Mean of the observation distribution under the given hypothesis.
    pub fn mean_under(&self, truth: Hypothesis) -> f64 {
        match truth {
            Hypothesis::H0 => self.theta0,
            Hypothesis::H1 => self.theta1,
        }
    }
}

/// Per-sample log-likelihood ratio z(x) = log(p(x|0)/p(x|1)).
///
/// For the Gaussian pair this is affine in x:
/// z(x) = (2(theta0 - theta1)x + theta1^2 - theta0^2) / (2 sigma^2).
pub fn gaussian_z(x: f64, model: &GaussianHypotheses) -> f64 {
    let GaussianHypotheses {
        theta0,
        theta1,
        sigma,
    } = *model;
    (2.0 * (theta0 - theta1) * x + theta1 * theta1 - theta0 * theta0) / (2.0 * sigma * sigma)
}

/// Mean and standard deviation of the z increment under `truth`.
///
/// z is affine in the observation, so its moments follow directly from the
/// observation moments. Useful as an analytic reference for simulated
/// martingale drift.
pub fn increment_moments(model: &GaussianHypotheses, truth: Hypothesis) -> (f64, f64) {
    let slope = (model.theta0 - model.theta1) / (model.sigma * model.sigma);
    let mean = gaussian_z(model.mean_under(truth), model);
    (mean, slope.abs() * model.sigma)
}

fn validate_n0(n0: f64) -> Result<()> {
    if n0.is_nan() || n0 == f64::INFINITY {
        return Err(Error::NonFinite {
            name: "n0",
            value: n0,
        });
    }
    if n0 <= 0.0 {
        return Err(Error::SampleCountNotPositive { n0 });
    }
    Ok(())
}

fn validate_threshold(name: &'static str, value: f64) -> Result<()> {
    // infinities are legitimate limits; only NaN is rejected
    if value.is_nan() {
        return Err(Error::NonFinite { name, value });
    }
    Ok(())
}

fn clamp_probability(p: f64) -> f64 {
    p.clamp(0.0, 1.0)
}

/// P0(Z_{n0} >= log_a): probability, under hypothesis 0, that the statistic
/// after n0 samples is at or above the upper threshold.
pub fn stop_prob_h0(model: &GaussianHypotheses, n0: f64, log_a: f64) -> Result<f64> {
    validate_n0(n0)?;
    validate_threshold("log_a", log_a)?;
    let GaussianHypotheses {
        theta0,
        theta1,
        sigma,
    } = *model;
    let numerator = 2.0 * sigma * sigma * log_a
        - (theta1 * theta1 - theta0 * theta0)
        - 2.0 * n0 * theta0 * (theta0 - theta1);
    let denominator = 2.0 * (theta0 - theta1) * (2.0 * n0).sqrt() * sigma;
    Ok(clamp_probability(
        0.5 * (1.0 - erf(numerator / denominator)),
    ))
}

/// P1(Z_{n0} <= log_b): probability, under hypothesis 1, that the statistic
/// after n0 samples is at or below the lower threshold.
pub fn stop_prob_h1(model: &GaussianHypotheses, n0: f64, log_b: f64) -> Result<f64> {
    validate_n0(n0)?;
    validate_threshold("log_b", log_b)?;
    let GaussianHypotheses {
        theta0,
        theta1,
        sigma,
    } = *model;
    let numerator = 2.0 * sigma * sigma * log_b
        - (theta1 * theta1 - theta0 * theta0)
        - 2.0 * n0 * theta1 * (theta0 - theta1);
    let denominator = 2.0 * (theta0 - theta1) * (2.0 * n0).sqrt() * sigma;
    Ok(clamp_probability(
        0.5 * (1.0 + erf(numerator / denominator)),
    ))
}

/// Both threshold probabilities at a fixed horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HorizonStopProbabilities {
    /// P0(Z_{n0} >= log A).
    pub p0_accept0: f64,
    /// P1(Z_{n0} <= log B).
    pub p1_accept1: f64,
    /// Number of samples the statistic accumulates.
    pub n0: f64,
}

/// Evaluates both closed forms for the given thresholds.
pub fn horizon_stop_probabilities(
    model: &GaussianHypotheses,
    n0: f64,
    thresholds: &WaldThresholds,
) -> Result<HorizonStopProbabilities> {
    Ok(HorizonStopProbabilities {
        p0_accept0: stop_prob_h0(model, n0, thresholds.log_a())?,
        p1_accept1: stop_prob_h1(model, n0, thresholds.log_b())?,
        n0,
    })
}
