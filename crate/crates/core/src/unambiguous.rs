//! Unambiguous discrimination of two pure qubit states.
//!
//! For states with overlap c, the conclusive success probability with n
//! copies is 1 - c^n. Repartitioning the copies into batches of size l
//! replaces the overlap by c^l and the copy count by n/l, and the exponent
//! algebra (c^l)^(n/l) = c^n makes the result identical: no batch ordering
//! helps this protocol.

use crate::error::{Error, Result};

/// A pair of pure qubit states at angle theta, with overlap cos(2 theta).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitPair {
    theta: f64,
    overlap: f64,
}

impl QubitPair {
    /// Builds the pair from the state angle, theta in [0, pi/4].
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() || !(0.0..=std::f64::consts::FRAC_PI_4).contains(&theta) {
            return Err(Error::AngleOutOfRange { angle: theta });
        }
        Ok(Self {
            theta,
            overlap: (2.0 * theta).cos(),
        })
    }

    /// Builds the pair from the overlap c in [0, 1].
    pub fn from_overlap(overlap: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&overlap) || overlap.is_nan() {
            return Err(Error::OverlapOutOfRange { overlap });
        }
        Ok(Self {
            theta: overlap.acos() / 2.0,
            overlap,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn overlap(&self) -> f64 {
        self.overlap
    }
}

// Sequential product: monotone in the exponent (each factor <= 1 can only
// shrink the rounded value), which the monotonicity tests rely on.
fn overlap_power(c: f64, exponent: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..exponent {
        acc *= c;
    }
    acc
}

/// Success probability 1 - c^n of unambiguously discriminating the pair
/// with n copies.
pub fn success_unambiguous(c: f64, n: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) || c.is_nan() {
        return Err(Error::OverlapOutOfRange { overlap: c });
    }
    if n == 0 {
        return Err(Error::ZeroCopies);
    }
    Ok(1.0 - overlap_power(c, n))
}

/// Success probability after repartitioning n copies into n/l batches of l:
/// 1 - (c^l)^(n/l), which equals 1 - c^n.
///
/// The batch size must divide n; the protocol physically regroups copies.
/// The exponent algebra is carried out on the integer exponents, where it
/// is exact, so the result matches [`success_unambiguous`] bit for bit;
/// re-associating the floating-point products instead would introduce
/// last-ulp noise in an identity that holds exactly.
pub fn batched_success_unambiguous(c: f64, n: u32, l: u32) -> Result<f64> {
    if l == 0 {
        return Err(Error::ZeroCopies);
    }
    if n == 0 || !n.is_multiple_of(l) {
        return Err(Error::BatchNotDivisor {
            copies: n,
            batch: l,
        });
    }
    let batches = n / l;
    success_unambiguous(c, l * batches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn orthogonal_and_identical_limits() {
        assert_eq!(success_unambiguous(0.0, 1).unwrap(), 1.0);
        assert_eq!(success_unambiguous(0.0, 7).unwrap(), 1.0);
        assert_eq!(success_unambiguous(1.0, 100).unwrap(), 0.0);
    }

    #[test]
    fn ten_copies_at_overlap_point_nine() {
        let p = success_unambiguous(0.9, 10).unwrap();
        assert!((p - 0.6513215599).abs() < 1e-10);
    }

    #[test]
    fn batching_changes_nothing() {
        let direct = success_unambiguous(0.9, 10).unwrap();
        assert_eq!(batched_success_unambiguous(0.9, 10, 2).unwrap(), direct);
        assert_eq!(batched_success_unambiguous(0.9, 10, 1).unwrap(), direct);
        assert_eq!(batched_success_unambiguous(0.9, 10, 10).unwrap(), direct);
    }

    #[test]
    fn divisibility_is_enforced() {
        assert!(matches!(
            batched_success_unambiguous(0.9, 10, 3),
            Err(Error::BatchNotDivisor { .. })
        ));
        assert!(batched_success_unambiguous(0.9, 10, 0).is_err());
        assert!(success_unambiguous(1.1, 10).is_err());
        assert!(success_unambiguous(0.9, 0).is_err());
    }

    #[test]
    fn qubit_pair_overlap() {
        let pair = QubitPair::new(std::f64::consts::FRAC_PI_4).unwrap();
        assert!(pair.overlap().abs() < 1e-12);
        let pair = QubitPair::new(0.0).unwrap();
        assert_eq!(pair.overlap(), 1.0);

        let pair = QubitPair::from_overlap(0.5).unwrap();
        assert!(((2.0 * pair.theta()).cos() - 0.5).abs() < 1e-12);

        assert!(QubitPair::new(1.0).is_err());
        assert!(QubitPair::from_overlap(-0.2).is_err());
    }

    proptest! {
        #[test]
        fn batch_invariance_over_all_divisors(c in 0.0f64..=1.0, n in 1u32..=64) {
            let direct = success_unambiguous(c, n).unwrap();
            for l in 1..=n {
                if n % l == 0 {
                    let batched = batched_success_unambiguous(c, n, l).unwrap();
                    prop_assert!((batched - direct).abs() <= 1e-15);
                }
            }
        }

        #[test]
        fn monotone_in_copies_and_overlap(c in 0.0f64..=1.0, n in 1u32..=63) {
            let fewer = success_unambiguous(c, n).unwrap();
            let more = success_unambiguous(c, n + 1).unwrap();
            prop_assert!(more >= fewer);

            let tighter = success_unambiguous((c * 0.9).min(1.0), n).unwrap();
            prop_assert!(tighter >= fewer);
        }
    }
}
