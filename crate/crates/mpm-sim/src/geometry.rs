//! Multi-elliptical scattering geometry.
//!
//! The transmitter sits at `(-f, 0)` and the receiver at `(+f, 0)` with
//! `f = D/2` for a link distance `D`. Every delayed tap of a power delay
//! profile defines a confocal ellipse of potential single-bounce
//! scatterers: a path with excess delay `tau` has total length
//! `L = D + c*tau`, so the semi-major axis is `a = L/2` and
//! `b = sqrt(a^2 - f^2)`. A scatterer seen from the transmitter under
//! departure angle `theta_t` lies on the ellipse at focal radius
//! `r(theta_t) = a (1 - e^2) / (1 - e cos theta_t)`, and the receiver
//! observes the ray under the arrival angle returned by
//! [`departure_to_arrival`].
//!
//! Angle conventions: degrees, wrapped to `(-180, 180]`. Departure angles
//! are measured at the transmitter from the direction pointing away from
//! the receiver toward the scatterer (`theta_t = 180` aims straight at the
//! receiver's side... specifically `theta_t = 0` points along the positive
//! major axis toward and beyond the receiver). Arrival angles are measured
//! at the receiver from the direction pointing back at the transmitter, so
//! `phi_r = 0` means the ray arrives from the transmitter's direction.

use crate::error::{Error, Result};
use crate::tdl::{NormalizedWeights, TapDelayLine};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 299_792_458.0;

/// Wraps an angle in degrees to the interval `(-180, 180]`.
///
/// Values already inside the interval are returned unchanged (bit-exact);
/// only out-of-range values are folded.
#[inline]
pub fn wrap_deg(x: f64) -> f64 {
    if x > -180.0 && x <= 180.0 {
        return x;
    }
    let y = (x + 180.0).rem_euclid(360.0) - 180.0;
    if y == -180.0 {
        180.0
    } else {
        y
    }
}

/// One confocal scattering ellipse tied to a delayed tap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    /// Semi-major axis, m.
    pub a_m: f64,
    /// Semi-minor axis, m.
    pub b_m: f64,
    /// Focal half-distance `f = D/2`, m.
    pub focal_m: f64,
    /// Eccentricity `e = f/a`, in `(0, 1)`.
    pub eccentricity: f64,
    /// Excess delay that generated this ellipse, ns.
    pub delay_ns: f64,
    /// Index of the originating tap within its profile.
    pub tap_index: usize,
}

/// Builds the ellipse for one delayed tap.
///
/// Requires `distance_m > 0` and `delay_ns > 0`; a zero excess delay has no
/// scattering ellipse (the direct-path tap is modeled separately).
pub fn ellipse_for_delay(distance_m: f64, delay_ns: f64, tap_index: usize) -> Result<Ellipse> {
    if !distance_m.is_finite() || distance_m <= 0.0 {
        return Err(Error::Domain(format!(
            "link distance must be finite and > 0, got {distance_m}"
        )));
    }
    if !delay_ns.is_finite() || delay_ns <= 0.0 {
        return Err(Error::Domain(format!(
            "excess delay must be finite and > 0 to define an ellipse, got {delay_ns}"
        )));
    }
    let f = distance_m / 2.0;
    let path_m = distance_m + SPEED_OF_LIGHT_M_PER_S * delay_ns * 1e-9;
    let a = path_m / 2.0;
    let b = (a * a - f * f).sqrt();
    Ok(Ellipse {
        a_m: a,
        b_m: b,
        focal_m: f,
        eccentricity: f / a,
        delay_ns,
        tap_index,
    })
}

/// Distance from the transmitter focus to the ellipse along departure
/// angle `theta_t_deg`, m.
#[inline]
pub fn focal_radius(e: &Ellipse, theta_t_deg: f64) -> f64 {
    let th = wrap_deg(theta_t_deg).to_radians();
    let ecc = e.eccentricity;
    e.a_m * (1.0 - ecc * ecc) / (1.0 - ecc * th.cos())
}

/// Cartesian scatterer position for a departure angle, with the
/// transmitter at `(-f, 0)` and the receiver at `(+f, 0)`.
#[inline]
pub fn scatterer_position(e: &Ellipse, theta_t_deg: f64) -> (f64, f64) {
    let th = wrap_deg(theta_t_deg).to_radians();
    let r = focal_radius(e, theta_t_deg);
    (-e.focal_m + r * th.cos(), r * th.sin())
}

/// Maps a departure angle at the transmitter to the arrival angle at the
/// receiver for single-bounce scattering on the given ellipse.
///
/// Both angles are in degrees wrapped to `(-180, 180]`. The map is an
/// odd, strictly increasing bijection of the circle: `theta_t = 180`
/// (departure straight away from the receiver, bouncing behind the
/// transmitter) arrives from the transmitter's direction (`phi_r = 0`),
/// while `theta_t = 0` arrives from behind the receiver (`phi_r = 180`).
pub fn departure_to_arrival(e: &Ellipse, theta_t_deg: f64) -> f64 {
    let (sx, sy) = scatterer_position(e, theta_t_deg);
    // Arrival measured from the Rx->Tx direction; equals the negated angle
    // of the Rx->scatterer vector mirrored through the receiver.
    let mut phi = -sy.atan2(e.focal_m - sx).to_degrees();
    if phi <= -180.0 {
        phi = 180.0;
    } else if phi > 180.0 {
        phi = 180.0;
    }
    phi
}

/// The scattering geometry of a full profile: one ellipse per delayed tap
/// plus the normalized power weight of every tap (index 0 = direct tap).
#[derive(Debug, Clone, PartialEq)]
pub struct EllipseSet {
    /// Link distance `D`, m.
    pub distance_m: f64,
    /// Normalized tap weights, same order as the originating profile.
    pub tap_weights: Vec<f64>,
    /// Ellipses of the delayed taps; `tap_index` points into `tap_weights`.
    pub ellipses: Vec<Ellipse>,
}

/// Builds the confocal ellipse family for a delay-scaled profile.
///
/// The profile must carry physical delays (see
/// [`crate::tdl::scale_delays`]) with the first tap at zero delay; the
/// weight vector must match the tap count.
pub fn build_ellipses(
    scaled: &TapDelayLine,
    weights: &NormalizedWeights,
    distance_m: f64,
) -> Result<EllipseSet> {
    if weights.len() != scaled.taps.len() {
        return Err(Error::Domain(format!(
            "weight count {} does not match tap count {}",
            weights.len(),
            scaled.taps.len()
        )));
    }
    if scaled.taps.is_empty() || scaled.taps[0].delay_ns != 0.0 {
        return Err(Error::Domain(
            "profile must start with a zero-delay tap".to_string(),
        ));
    }
    let mut ellipses = Vec::with_capacity(scaled.taps.len().saturating_sub(1));
    for (i, tap) in scaled.taps.iter().enumerate().skip(1) {
        ellipses.push(ellipse_for_delay(distance_m, tap.delay_ns, i)?);
    }
    debug_assert!(ellipses.windows(2).all(|w| w[0].a_m < w[1].a_m));
    Ok(EllipseSet {
        distance_m,
        tap_weights: weights.0.clone(),
        ellipses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tdl;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn reference_ellipse() -> Ellipse {
        // 100 m link, 100 ns excess delay.
        ellipse_for_delay(100.0, 100.0, 1).unwrap()
    }

    #[test]
    fn wrap_examples() {
        assert_eq!(wrap_deg(190.0), -170.0);
        assert_eq!(wrap_deg(-190.0), 170.0);
        assert_eq!(wrap_deg(180.0), 180.0);
        assert_eq!(wrap_deg(-180.0), 180.0);
        assert_eq!(wrap_deg(540.0), 180.0);
        assert_eq!(wrap_deg(360.0), 0.0);
        assert_eq!(wrap_deg(0.0), 0.0);
        // In-range values pass through bit-exactly.
        let x = -17.300000000000004;
        assert_eq!(wrap_deg(x).to_bits(), x.to_bits());
    }

    #[test]
    fn reference_ellipse_dimensions() {
        let e = reference_ellipse();
        assert_relative_eq!(e.a_m, 64.9896, epsilon = 1e-3);
        assert_relative_eq!(e.b_m, 41.5169, epsilon = 1e-3);
        assert_relative_eq!(e.eccentricity, 0.76935, epsilon = 1e-4);
        assert_relative_eq!(e.focal_m, 50.0, epsilon = 1e-12);
    }

    #[test]
    fn focal_radius_anchors() {
        let e = reference_ellipse();
        assert_relative_eq!(focal_radius(&e, 90.0), 26.522, epsilon = 1e-3);
        // Vertices: farthest point beyond the receiver, nearest behind Tx.
        assert_relative_eq!(
            focal_radius(&e, 0.0),
            e.a_m * (1.0 + e.eccentricity),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            focal_radius(&e, 180.0),
            e.a_m * (1.0 - e.eccentricity),
            max_relative = 1e-12
        );
    }

    #[test]
    fn arrival_map_anchors() {
        let e = reference_ellipse();
        assert_relative_eq!(departure_to_arrival(&e, 180.0), 0.0, epsilon = 1e-9);
        assert_relative_eq!(departure_to_arrival(&e, 0.0), 180.0, epsilon = 1e-9);
        // Co-vertex: departure atan2(b, f) lands at the mirrored arrival.
        let theta = e.b_m.atan2(e.focal_m).to_degrees();
        assert_relative_eq!(theta, 39.71, epsilon = 1e-2);
        assert_relative_eq!(departure_to_arrival(&e, theta), -theta, epsilon = 1e-9);
    }

    #[test]
    fn arrival_map_is_monotone_around_the_circle() {
        // As a circle map the arrival angle increases with the departure
        // angle (degree +1); on the wrapped interval that means strictly
        // increasing everywhere except a single -360 seam jump, which sits
        // at theta = 0 (the far vertex, where the arrival crosses 180).
        let e = reference_ellipse();
        let mut seams = 0;
        let mut prev: Option<f64> = None;
        for k in -3599..=3600 {
            let th = k as f64 * 0.05;
            let phi = departure_to_arrival(&e, th);
            if let Some(p) = prev {
                let d = phi - p;
                if d <= 0.0 {
                    assert!(d < -300.0, "non-seam decrease at theta={th}: {d}");
                    seams += 1;
                }
            }
            prev = Some(phi);
        }
        assert_eq!(seams, 1);
    }

    #[test]
    fn build_set_from_profile() {
        let p = tdl::load_tdl_profile(tdl::ProfileId::TdlA).unwrap();
        let s = tdl::scale_delays(&p, 61.0).unwrap();
        let w = tdl::normalize_powers(&s).unwrap();
        let set = build_ellipses(&s, &w, 100.0).unwrap();
        assert_eq!(set.ellipses.len(), 22);
        assert_eq!(set.tap_weights.len(), 23);
        // Confocal nesting: same foci, growing axes.
        for pair in set.ellipses.windows(2) {
            assert_eq!(pair[0].focal_m, pair[1].focal_m);
            assert!(pair[0].a_m < pair[1].a_m);
            assert!(pair[0].b_m < pair[1].b_m);
        }
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(ellipse_for_delay(0.0, 100.0, 1).is_err());
        assert!(ellipse_for_delay(100.0, 0.0, 1).is_err());
        assert!(ellipse_for_delay(100.0, -1.0, 1).is_err());
        assert!(ellipse_for_delay(f64::NAN, 100.0, 1).is_err());
    }

    proptest! {
        #[test]
        fn path_length_sum_matches_major_axis(
            d in 1.0f64..1000.0,
            tau in 0.1f64..5000.0,
            theta in -179.99f64..180.0,
        ) {
            let e = ellipse_for_delay(d, tau, 1).unwrap();
            let (sx, sy) = scatterer_position(&e, theta);
            let to_tx = ((sx + e.focal_m).powi(2) + sy * sy).sqrt();
            let to_rx = ((sx - e.focal_m).powi(2) + sy * sy).sqrt();
            let rel = ((to_tx + to_rx) - 2.0 * e.a_m).abs() / (2.0 * e.a_m);
            prop_assert!(rel < 1e-9, "relative defect {rel}");
        }

        #[test]
        fn arrival_map_is_odd(
            d in 1.0f64..1000.0,
            tau in 0.1f64..5000.0,
            theta in 0.01f64..179.99,
        ) {
            let e = ellipse_for_delay(d, tau, 1).unwrap();
            let plus = departure_to_arrival(&e, theta);
            let minus = departure_to_arrival(&e, -theta);
            prop_assert_eq!(minus.to_bits(), (-plus).to_bits());
        }

        #[test]
        fn arrival_stays_wrapped(
            d in 1.0f64..1000.0,
            tau in 0.1f64..5000.0,
            theta in -720.0f64..720.0,
        ) {
            let e = ellipse_for_delay(d, tau, 1).unwrap();
            let phi = departure_to_arrival(&e, theta);
            prop_assert!(phi > -180.0 && phi <= 180.0, "phi={phi}");
        }
    }
}
