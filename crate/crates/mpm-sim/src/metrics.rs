//! Weighted angular statistics.
//!
//! The headline metric is the rms angle spread computed from plain
//! (non-circular) moments of wrapped angles:
//! `sigma = sqrt(E[phi^2] - E[phi]^2)` with expectations taken under the
//! normalized sample weights and angles in degrees on `(-180, 180]`.
//! Linear moments on the wrapped circle are the convention used by the
//! reference data this crate reproduces; note they depend on where the
//! wrap seam sits, and a distribution hugging +/-180 can legitimately
//! exceed the uniform value `360/sqrt(12) = 103.92`.

use crate::error::{Error, Result};

/// Result of a weighted angular-moment computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleSpread {
    /// rms spread, degrees.
    pub sigma_deg: f64,
    /// Weighted mean angle, degrees.
    pub mean_deg: f64,
    /// Kish effective sample size `(sum w)^2 / sum w^2`.
    pub n_effective: f64,
    /// Total weight before normalization.
    pub total_weight: f64,
}

/// Computes mean and rms spread of weighted wrapped angles.
///
/// Every angle must be finite and inside `(-180, 180]`; weights must be
/// finite and nonnegative with a positive total.
pub fn angle_spread_weighted<I>(pairs: I) -> Result<AngleSpread>
where
    I: IntoIterator<Item = (f64, f64)>,
{
    let mut sw = 0.0f64;
    let mut sw2 = 0.0f64;
    let mut swa = 0.0f64;
    let mut swa2 = 0.0f64;
    for (angle, weight) in pairs {
        if !angle.is_finite() || angle <= -180.0 || angle > 180.0 {
            return Err(Error::Domain(format!(
                "angle {angle} outside (-180, 180]"
            )));
        }
        if !weight.is_finite() || weight < 0.0 {
            return Err(Error::Domain(format!("invalid weight {weight}")));
        }
        sw += weight;
        sw2 += weight * weight;
        swa += weight * angle;
        swa2 += weight * angle * angle;
    }
    if sw <= 0.0 {
        return Err(Error::Domain("zero total weight".to_string()));
    }
    let mean = swa / sw;
    let var = (swa2 / sw - mean * mean).max(0.0);
    Ok(AngleSpread {
        sigma_deg: var.sqrt(),
        mean_deg: mean,
        n_effective: sw * sw / sw2,
        total_weight: sw,
    })
}

/// Unweighted convenience wrapper.
pub fn angle_spread(angles: &[f64]) -> Result<AngleSpread> {
    angle_spread_weighted(angles.iter().map(|&a| (a, 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn two_point_hand_value() {
        // Equal masses at -10 and +30: mean 10, spread 20.
        let r = angle_spread(&[-10.0, 30.0]).unwrap();
        assert_relative_eq!(r.mean_deg, 10.0, epsilon = 1e-12);
        assert_relative_eq!(r.sigma_deg, 20.0, epsilon = 1e-12);
        assert_relative_eq!(r.n_effective, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn weighting_matters() {
        let r = angle_spread_weighted([(0.0, 3.0), (90.0, 1.0)]).unwrap();
        assert_relative_eq!(r.mean_deg, 22.5, epsilon = 1e-12);
        // var = E[a^2] - mean^2 = 2025 - 506.25
        assert_relative_eq!(r.sigma_deg, 1518.75f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(r.n_effective, 16.0 / 10.0, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(angle_spread(&[]).is_err());
        assert!(angle_spread_weighted([(0.0, 0.0)]).is_err());
        assert!(angle_spread_weighted([(0.0, -1.0)]).is_err());
        assert!(angle_spread_weighted([(f64::NAN, 1.0)]).is_err());
        assert!(angle_spread_weighted([(-180.0, 1.0)]).is_err());
        assert!(angle_spread_weighted([(200.0, 1.0)]).is_err());
        assert!(angle_spread_weighted([(0.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn single_atom_has_zero_spread() {
        let r = angle_spread_weighted([(42.0, 2.5)]).unwrap();
        assert_eq!(r.sigma_deg, 0.0);
        assert_eq!(r.mean_deg, 42.0);
    }

    proptest! {
        #[test]
        fn weight_scale_invariance(
            scale in 1e-6f64..1e6,
            angles in proptest::collection::vec(-179.0f64..180.0, 2..50),
        ) {
            let base: Vec<(f64, f64)> =
                angles.iter().map(|&a| (a, 1.0 + a.abs())).collect();
            let scaled: Vec<(f64, f64)> =
                base.iter().map(|&(a, w)| (a, w * scale)).collect();
            let r1 = angle_spread_weighted(base).unwrap();
            let r2 = angle_spread_weighted(scaled).unwrap();
            prop_assert!((r1.sigma_deg - r2.sigma_deg).abs()
                <= 1e-12 * (1.0 + r1.sigma_deg));
            prop_assert!((r1.mean_deg - r2.mean_deg).abs()
                <= 1e-12 * (1.0 + r1.mean_deg.abs()));
            prop_assert!((r1.n_effective - r2.n_effective).abs()
                <= 1e-9 * r1.n_effective);
        }

        #[test]
        fn shift_covariance_within_range(
            shift in -20.0f64..20.0,
            angles in proptest::collection::vec(-150.0f64..150.0, 2..50),
        ) {
            // Shifting all angles (staying inside the wrap interval) shifts
            // the mean and leaves the spread unchanged.
            let r1 = angle_spread(&angles).unwrap();
            let shifted: Vec<f64> = angles.iter().map(|a| a + shift).collect();
            let r2 = angle_spread(&shifted).unwrap();
            prop_assert!((r2.mean_deg - r1.mean_deg - shift).abs() < 1e-9);
            prop_assert!((r2.sigma_deg - r1.sigma_deg).abs() < 1e-9);
        }
    }
}
