//! Coherent-state measurement model.
//!
//! Beam splitters map coherent states to coherent states, so a classical
//! (q, p) amplitude pair is a complete description here; no Fock-space
//! representation is built. The accumulation chain with transmissivities
//! T_j = j/(j+1) concentrates l identical copies into a single mode
//! carrying sqrt(l) times the amplitude, leaving vacuum in the other
//! modes. Homodyne detection of the q quadrature (measurement angle 0) of
//! a coherent state yields Gaussian outcomes with mean q and variance 1/4.

use crate::error::{Error, Result};
use crate::gaussian::GaussianHypotheses;

/// Tolerance on T + R = 1 for beam-splitter coefficients.
const UNITARITY_TOL: f64 = 1e-12;

/// Quadrature pair of a coherent amplitude, gamma = q + i p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentAmplitude {
    q: f64,
    p: f64,
}

impl CoherentAmplitude {
    pub fn new(q: f64, p: f64) -> Result<Self> {
        for (name, value) in [("q", q), ("p", p)] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        Ok(Self { q, p })
    }

    /// The vacuum amplitude.
    pub fn vacuum() -> Self {
        Self { q: 0.0, p: 0.0 }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// |gamma|^2 = q^2 + p^2, the mode energy in these units.
    pub fn norm_sqr(&self) -> f64 {
        self.q * self.q + self.p * self.p
    }
}

/// Transmissivity/reflectivity pair of one beam splitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterSpec {
    transmissivity: f64,
    reflectivity: f64,
}

impl BeamSplitterSpec {
    /// Requires T, R in [0, 1] with T + R = 1 to within 1e-12.
    pub fn new(transmissivity: f64, reflectivity: f64) -> Result<Self> {
        let valid = (0.0..=1.0).contains(&transmissivity)
            && (0.0..=1.0).contains(&reflectivity)
            && (transmissivity + reflectivity - 1.0).abs() <= UNITARITY_TOL;
        if !valid {
            return Err(Error::BeamSplitterNotUnitary {
                transmissivity,
                reflectivity,
            });
        }
        Ok(Self {
            transmissivity,
            reflectivity,
        })
    }

    /// The 50:50 splitter.
    pub fn balanced() -> Self {
        Self {
            transmissivity: 0.5,
            reflectivity: 0.5,
        }
    }

    pub fn transmissivity(&self) -> f64 {
        self.transmissivity
    }

    pub fn reflectivity(&self) -> f64 {
        self.reflectivity
    }
}

/// Applies one beam splitter to a pair of coherent amplitudes:
/// (gamma, delta) -> (sqrt(T) gamma + sqrt(R) delta, -sqrt(R) gamma + sqrt(T) delta),
/// componentwise on (q, p).
pub fn beam_splitter(
    gamma: CoherentAmplitude,
    delta: CoherentAmplitude,
    spec: &BeamSplitterSpec,
) -> (CoherentAmplitude, CoherentAmplitude) {
    let t = spec.transmissivity.sqrt();
    let r = spec.reflectivity.sqrt();
    let out1 = CoherentAmplitude {
        q: t * gamma.q + r * delta.q,
        p: t * gamma.p + r * delta.p,
    };
    let out2 = CoherentAmplitude {
        q: -r * gamma.q + t * delta.q,
        p: -r * gamma.p + t * delta.p,
    };
    (out1, out2)
}

/// The splitter chain that concentrates `l` copies into one mode:
/// T_j = j/(j+1), R_j = 1/(j+1) for j = 1..l-1. Empty for l = 1.
pub fn accumulation_chain(l: u32) -> Vec<BeamSplitterSpec> {
    (1..l)
        .map(|j| {
            let j = j as f64;
            BeamSplitterSpec {
                transmissivity: j / (j + 1.0),
                reflectivity: 1.0 / (j + 1.0),
            }
        })
        .collect()
}

/// Folds `l` identical copies of `gamma` through the accumulation chain.
///
/// At step j the running mode (carrying sqrt(j) gamma) enters the
/// transmitted port and the (j+1)-th fresh copy the reflected port; this
/// is the order for which T_j = j/(j+1) concentrates exactly. Returns the
/// concentrated mode (sqrt(l) gamma up to rounding) and the l-1 residual
/// modes (vacuum up to rounding).
pub fn accumulate(gamma: CoherentAmplitude, l: u32) -> (CoherentAmplitude, Vec<CoherentAmplitude>) {
    let mut concentrated = gamma;
    let mut residuals = Vec::with_capacity(l.saturating_sub(1) as usize);
    for spec in accumulation_chain(l) {
        let (kept, leaked) = beam_splitter(concentrated, gamma, &spec);
        concentrated = kept;
        residuals.push(leaked);
    }
    (concentrated, residuals)
}

/// Gaussian outcome law of a q-quadrature homodyne measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomodyneModel {
    /// Mean outcome, equal to the q component of the measured amplitude.
    pub mean: f64,
    /// Always 1/4 for a coherent state.
    pub variance: f64,
}

/// Outcome statistics for measuring the q quadrature of `gamma`.
pub fn homodyne_model_for(gamma: CoherentAmplitude) -> HomodyneModel {
    HomodyneModel {
        mean: gamma.q,
        variance: 0.25,
    }
}

/// The Gaussian hypothesis pair seen by the test when each step measures a
/// batch of `l` accumulated copies: means sqrt(l) theta_i, sigma = 1/2.
///
/// theta_i is the real (q) part of the i-th candidate amplitude.
pub fn batch_hypotheses(theta0: f64, theta1: f64, l: u32) -> Result<GaussianHypotheses> {
    if l == 0 {
        return Err(Error::ZeroCopies);
    }
    let scale = (l as f64).sqrt();
    GaussianHypotheses::new(scale * theta0, scale * theta1, 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn amp(q: f64, p: f64) -> CoherentAmplitude {
        CoherentAmplitude::new(q, p).unwrap()
    }

    #[test]
    fn balanced_splitter_concentrates_equal_inputs() {
        let gamma = amp(0.3, -0.2);
        let (out1, out2) = beam_splitter(gamma, gamma, &BeamSplitterSpec::balanced());
        let root2 = std::f64::consts::SQRT_2;
        assert!((out1.q() - root2 * 0.3).abs() < 1e-15);
        assert!((out1.p() - root2 * -0.2).abs() < 1e-15);
        assert!(out2.q().abs() < 1e-15 && out2.p().abs() < 1e-15);
    }

    #[test]
    fn fully_transmissive_splitter_is_the_identity() {
        let gamma = amp(0.7, 0.1);
        let spec = BeamSplitterSpec::new(1.0, 0.0).unwrap();
        let (out1, out2) = beam_splitter(gamma, CoherentAmplitude::vacuum(), &spec);
        assert_eq!(out1, gamma);
        assert_eq!(out2, CoherentAmplitude::vacuum());
    }

    #[test]
    fn spec_validation() {
        assert!(BeamSplitterSpec::new(0.6, 0.5).is_err());
        assert!(BeamSplitterSpec::new(-0.1, 1.1).is_err());
        assert!(BeamSplitterSpec::new(0.25, 0.75).is_ok());
    }

    #[test]
    fn chain_transmissivities() {
        assert!(accumulation_chain(1).is_empty());

        let chain = accumulation_chain(2);
        assert_eq!(chain.len(), 1);
        assert_eq!(chain[0].transmissivity(), 0.5);
        assert_eq!(chain[0].reflectivity(), 0.5);

        let chain = accumulation_chain(4);
        let expected = [
            (1.0 / 2.0, 1.0 / 2.0),
            (2.0 / 3.0, 1.0 / 3.0),
            (3.0 / 4.0, 1.0 / 4.0),
        ];
        assert_eq!(chain.len(), 3);
        for (spec, (t, r)) in chain.iter().zip(expected) {
            assert!((spec.transmissivity() - t).abs() < 1e-15);
            assert!((spec.reflectivity() - r).abs() < 1e-15);
        }
    }

    #[test]
    fn accumulate_identity_and_vacuum() {
        let gamma = amp(0.4, 0.9);
        let (conc, residuals) = accumulate(gamma, 1);
        assert_eq!(conc, gamma);
        assert!(residuals.is_empty());

        let (conc, residuals) = accumulate(CoherentAmplitude::vacuum(), 7);
        assert_eq!(conc.norm_sqr(), 0.0);
        assert_eq!(residuals.len(), 6);
        assert!(residuals.iter().all(|r| r.norm_sqr() == 0.0));
    }

    #[test]
    fn four_copies_double_the_amplitude() {
        let (conc, residuals) = accumulate(amp(0.1, 0.0), 4);
        assert!((conc.q() - 0.2).abs() < 1e-12);
        assert!(conc.p().abs() < 1e-12);
        for r in residuals {
            assert!(r.norm_sqr().sqrt() < 1e-12);
        }
    }

    #[test]
    fn homodyne_law() {
        let m = homodyne_model_for(amp(0.1, 0.0));
        assert_eq!(m.mean, 0.1);
        assert_eq!(m.variance, 0.25);

        // the p component is invisible at measurement angle 0
        let m = homodyne_model_for(amp(0.0, 5.0));
        assert_eq!(m.mean, 0.0);
    }

    #[test]
    fn batch_hypotheses_scale_means_only() {
        let model = batch_hypotheses(0.1, -0.1, 4).unwrap();
        assert!((model.theta0() - 0.2).abs() < 1e-15);
        assert!((model.theta1() + 0.2).abs() < 1e-15);
        assert_eq!(model.sigma(), 0.5);

        let unbatched = batch_hypotheses(0.1, -0.1, 1).unwrap();
        assert_eq!(unbatched.theta0(), 0.1);
        assert_eq!(unbatched.sigma(), 0.5);

        assert!(batch_hypotheses(0.1, 0.1, 4).is_err());
        assert!(batch_hypotheses(0.1, -0.1, 0).is_err());
    }

    #[test]
    fn concentration_agrees_with_batch_hypotheses() {
        // accumulating then reading the homodyne mean must equal the
        // batched hypothesis mean
        for l in [1u32, 2, 3, 8, 17] {
            let (conc, _) = accumulate(amp(0.1, 0.0), l);
            let mean = homodyne_model_for(conc).mean;
            let model = batch_hypotheses(0.1, -0.1, l).unwrap();
            assert!((mean - model.theta0()).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn splitters_conserve_energy(
            q1 in -2.0f64..2.0, p1 in -2.0f64..2.0,
            q2 in -2.0f64..2.0, p2 in -2.0f64..2.0,
            t in 0.0f64..=1.0,
        ) {
            let spec = BeamSplitterSpec::new(t, 1.0 - t).unwrap();
            let a = amp(q1, p1);
            let b = amp(q2, p2);
            let (o1, o2) = beam_splitter(a, b, &spec);
            let before = a.norm_sqr() + b.norm_sqr();
            let after = o1.norm_sqr() + o2.norm_sqr();
            prop_assert!((before - after).abs() <= 1e-12);
        }

        #[test]
        fn accumulation_concentrates_exactly(
            q in -1.0f64..1.0, p in -1.0f64..1.0,
            l in 1u32..=64,
        ) {
            let gamma = amp(q, p);
            let (conc, residuals) = accumulate(gamma, l);
            let scale = (l as f64).sqrt();
            prop_assert!((conc.q() - scale * q).abs() <= 1e-12);
            prop_assert!((conc.p() - scale * p).abs() <= 1e-12);
            prop_assert_eq!(residuals.len(), (l - 1) as usize);
            for r in residuals {
                prop_assert!(r.norm_sqr().sqrt() <= 1e-12);
            }
        }
    }
}
