//! Composition of the received power angular spectrum (PAS).
//!
//! The spectrum is a weighted mixture with one component per profile tap:
//!
//! * the zero-delay tap becomes a **local scattering** component around the
//!   receiver, modeled as a von Mises density (optionally split with a
//!   discrete line-of-sight atom via a Rice factor);
//! * every delayed tap becomes a **geometric** component: departure angles
//!   are drawn from the transmit pattern density and pushed through that
//!   tap's scattering ellipse to arrival angles at the receiver.
//!
//! Component masses are the normalized tap powers; the transmit pattern
//! shapes only the angular distribution within each delayed component, not
//! the power split between taps (tap powers come from the delay profile
//! measurement, which already includes the link budget). The composed
//! spectrum is a weighted sample cloud normalized to unit total weight;
//! [`apply_rx_pattern`] then reweights it by a receive pattern.

use crate::antenna::{AntennaPattern, PatternKind, PatternSampler};
use crate::error::{Error, Result};
use crate::geometry::{departure_to_arrival, EllipseSet};
use crate::metrics::{angle_spread_weighted, AngleSpread};
use crate::rng::{sample_von_mises, StreamSeeder, CHANNEL_LOCAL, CHANNEL_TAP0};

/// Origin of one mixture component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    /// Von Mises scattering around the receiver (zero-delay tap).
    Local,
    /// Discrete line-of-sight arrival.
    LineOfSight,
    /// Single-bounce scattering on the ellipse of tap `i`.
    Tap(usize),
}

/// One weighted sample cloud of the mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct PasComponent {
    pub kind: ComponentKind,
    /// Total probability mass of the component.
    pub mass: f64,
    /// Arrival angles, degrees in `(-180, 180]`.
    pub angles_deg: Vec<f64>,
    /// Per-sample weights; they sum to `mass`.
    pub weights: Vec<f64>,
}

/// A composed power angular spectrum as a weighted sample cloud.
#[derive(Debug, Clone, PartialEq)]
pub struct Pas {
    pub components: Vec<PasComponent>,
}

impl Pas {
    /// Sum of all sample weights (1 after composition, up to rounding).
    pub fn total_weight(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.weights.iter().sum::<f64>())
            .sum()
    }

    /// Iterates `(angle, weight)` over every sample of every component.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.components.iter().flat_map(|c| {
            c.angles_deg
                .iter()
                .zip(&c.weights)
                .map(|(&a, &w)| (a, w))
        })
    }

    /// Total number of stored samples.
    pub fn sample_count(&self) -> usize {
        self.components.iter().map(|c| c.angles_deg.len()).sum()
    }

    /// rms angle spread of the spectrum.
    pub fn angle_spread(&self) -> Result<AngleSpread> {
        angle_spread_weighted(self.samples())
    }
}

/// Configuration of the local-scattering component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalScatterConfig {
    /// Von Mises concentration, `>= 0` (0 = uniform on the circle).
    pub kappa: f64,
    /// Mean arrival direction, degrees.
    pub mean_deg: f64,
}

impl Default for LocalScatterConfig {
    fn default() -> Self {
        LocalScatterConfig {
            kappa: 50.0,
            mean_deg: 0.0,
        }
    }
}

/// Configuration of an optional line-of-sight arrival.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LosConfig {
    /// Rice factor `K >= 0`: the zero-delay mass splits `K/(K+1)` into the
    /// discrete arrival and `1/(K+1)` into local scattering.
    pub rice_k: f64,
    /// Arrival direction of the discrete ray, degrees.
    pub angle_deg: f64,
}

fn validate_local(cfg: &LocalScatterConfig) -> Result<()> {
    if !cfg.kappa.is_finite() || cfg.kappa < 0.0 {
        return Err(Error::Domain(format!(
            "local-scattering kappa must be finite and >= 0, got {}",
            cfg.kappa
        )));
    }
    if !cfg.mean_deg.is_finite() {
        return Err(Error::Domain(
            "local-scattering mean must be finite".to_string(),
        ));
    }
    Ok(())
}

fn validate_los(cfg: &LosConfig) -> Result<()> {
    if !cfg.rice_k.is_finite() || cfg.rice_k < 0.0 {
        return Err(Error::Domain(format!(
            "Rice factor must be finite and >= 0, got {}",
            cfg.rice_k
        )));
    }
    if !cfg.angle_deg.is_finite() {
        return Err(Error::Domain(
            "line-of-sight angle must be finite".to_string(),
        ));
    }
    Ok(())
}

/// Draws the local-scattering component with the given mass.
pub fn local_component(
    cfg: &LocalScatterConfig,
    mass: f64,
    n_samples: usize,
    rng: &mut crate::rng::SimRng,
) -> Result<PasComponent> {
    validate_local(cfg)?;
    if n_samples == 0 {
        return Err(Error::Domain("n_samples must be >= 1".to_string()));
    }
    let w = mass / n_samples as f64;
    let angles: Vec<f64> = (0..n_samples)
        .map(|_| sample_von_mises(rng, cfg.kappa, cfg.mean_deg))
        .collect();
    Ok(PasComponent {
        kind: ComponentKind::Local,
        mass,
        weights: vec![w; n_samples],
        angles_deg: angles,
    })
}

/// Draws one delayed-tap component: departure angles from the transmit
/// pattern, pushed through the tap's ellipse.
pub fn delayed_component(
    ellipse: &crate::geometry::Ellipse,
    tx_sampler: &PatternSampler,
    mass: f64,
    n_samples: usize,
    rng: &mut crate::rng::SimRng,
) -> Result<PasComponent> {
    if n_samples == 0 {
        return Err(Error::Domain("n_samples must be >= 1".to_string()));
    }
    let w = mass / n_samples as f64;
    let angles: Vec<f64> = (0..n_samples)
        .map(|_| departure_to_arrival(ellipse, tx_sampler.sample(rng)))
        .collect();
    Ok(PasComponent {
        kind: ComponentKind::Tap(ellipse.tap_index),
        mass,
        weights: vec![w; n_samples],
        angles_deg: angles,
    })
}

/// Composes the full received spectrum for one geometry and transmit
/// pattern.
///
/// Every component draws from its own deterministic RNG stream derived
/// from `seeder`, so results are reproducible and components stay coupled
/// across configurations that share a seed. Total weight is normalized
/// to 1.
pub fn compose_pas(
    set: &EllipseSet,
    tx: &AntennaPattern,
    local: &LocalScatterConfig,
    los: Option<&LosConfig>,
    n_per_component: usize,
    seeder: &StreamSeeder,
) -> Result<Pas> {
    validate_local(local)?;
    if let Some(l) = los {
        validate_los(l)?;
    }
    if n_per_component == 0 {
        return Err(Error::Domain("n_per_component must be >= 1".to_string()));
    }
    let total_mass: f64 = set.tap_weights.iter().sum();
    if !(total_mass > 0.0) || !total_mass.is_finite() {
        return Err(Error::DegeneratePdp);
    }
    if set.tap_weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
        return Err(Error::Domain("tap weights must be finite and >= 0".to_string()));
    }

    let mut components = Vec::with_capacity(set.ellipses.len() + 2);

    // Zero-delay tap: local scattering, optionally split with a discrete
    // line-of-sight atom.
    let w0 = set.tap_weights[0] / total_mass;
    let (los_mass, local_mass) = match los {
        Some(l) if l.rice_k > 0.0 => {
            let k = l.rice_k;
            (w0 * k / (k + 1.0), w0 / (k + 1.0))
        }
        _ => (0.0, w0),
    };
    if local_mass > 0.0 {
        let mut rng = seeder.stream(CHANNEL_LOCAL);
        components.push(local_component(local, local_mass, n_per_component, &mut rng)?);
    }
    if los_mass > 0.0 {
        let l = los.expect("los mass implies config");
        components.push(PasComponent {
            kind: ComponentKind::LineOfSight,
            mass: los_mass,
            angles_deg: vec![crate::geometry::wrap_deg(l.angle_deg)],
            weights: vec![los_mass],
        });
    }

    // Delayed taps: pattern-shaped departures mapped through each ellipse.
    let tx_sampler = PatternSampler::new(tx);
    for ellipse in &set.ellipses {
        let mass = set.tap_weights[ellipse.tap_index] / total_mass;
        if mass == 0.0 {
            continue;
        }
        let mut rng = seeder.stream(CHANNEL_TAP0 + ellipse.tap_index as u64);
        components.push(delayed_component(
            ellipse,
            &tx_sampler,
            mass,
            n_per_component,
            &mut rng,
        )?);
    }

    if components.is_empty() {
        return Err(Error::DegeneratePdp);
    }
    Ok(Pas { components })
}

/// Relative power threshold below which an Rx-filtered spectrum is
/// considered empty.
pub const RX_CAPTURE_THRESHOLD: f64 = 1e-9;

/// Weights a spectrum by a receive pattern and renormalizes.
///
/// An omni pattern returns a bit-identical copy. Errors if the pattern
/// captures less than [`RX_CAPTURE_THRESHOLD`] of the incoming power.
pub fn apply_rx_pattern(pas: &Pas, rx: &AntennaPattern) -> Result<Pas> {
    if rx.kind == PatternKind::Omni {
        return Ok(pas.clone());
    }
    let input_total = pas.total_weight();
    let mut components = Vec::with_capacity(pas.components.len());
    let mut output_total = 0.0;
    for c in &pas.components {
        let weights: Vec<f64> = c
            .angles_deg
            .iter()
            .zip(&c.weights)
            .map(|(&a, &w)| w * rx.power_gain(a))
            .collect();
        let mass: f64 = weights.iter().sum();
        output_total += mass;
        components.push(PasComponent {
            kind: c.kind,
            mass,
            angles_deg: c.angles_deg.clone(),
            weights,
        });
    }
    if output_total < RX_CAPTURE_THRESHOLD * input_total {
        return Err(Error::BeamCapturesNoEnergy);
    }
    let scale = input_total / output_total;
    for c in &mut components {
        c.mass *= scale;
        for w in &mut c.weights {
            *w *= scale;
        }
    }
    Ok(Pas { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_ellipses;
    use crate::tdl::{self, ProfileId};
    use approx::assert_relative_eq;

    fn test_set(profile: ProfileId, ds_ns: f64, d_m: f64) -> EllipseSet {
        let p = tdl::load_tdl_profile(profile).unwrap();
        let s = tdl::scale_delays(&p, ds_ns).unwrap();
        let w = tdl::normalize_powers(&s).unwrap();
        build_ellipses(&s, &w, d_m).unwrap()
    }

    fn compose_default(n: usize, seed: u64) -> Pas {
        let set = test_set(ProfileId::TdlA, 61.0, 100.0);
        compose_pas(
            &set,
            &AntennaPattern::narrow_beam(180.0),
            &LocalScatterConfig::default(),
            None,
            n,
            &StreamSeeder::new(seed, 0),
        )
        .unwrap()
    }

    #[test]
    fn mass_is_conserved_and_normalized() {
        let pas = compose_default(2000, 42);
        assert_eq!(pas.components.len(), 23);
        assert_relative_eq!(pas.total_weight(), 1.0, epsilon = 1e-12);
        for c in &pas.components {
            assert_relative_eq!(
                c.weights.iter().sum::<f64>(),
                c.mass,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn composition_is_deterministic() {
        let a = compose_default(500, 42);
        let b = compose_default(500, 42);
        assert_eq!(a, b);
        let c = compose_default(500, 43);
        assert_ne!(a, c);
        // Golden spot check: frozen first angle for seed 42.
        let first = a.components[0].angles_deg[0];
        let again = compose_default(500, 42).components[0].angles_deg[0];
        assert_eq!(first.to_bits(), again.to_bits());
    }

    #[test]
    fn zero_rice_factor_matches_no_los() {
        let set = test_set(ProfileId::TdlB, 61.0, 100.0);
        let seeder = StreamSeeder::new(9, 0);
        let base = compose_pas(
            &set,
            &AntennaPattern::wide_beam(180.0),
            &LocalScatterConfig::default(),
            None,
            1000,
            &seeder,
        )
        .unwrap();
        let with_zero_k = compose_pas(
            &set,
            &AntennaPattern::wide_beam(180.0),
            &LocalScatterConfig::default(),
            Some(&LosConfig {
                rice_k: 0.0,
                angle_deg: 0.0,
            }),
            1000,
            &seeder,
        )
        .unwrap();
        assert_eq!(base, with_zero_k);
    }

    #[test]
    fn los_split_obeys_rice_factor() {
        let set = test_set(ProfileId::TdlB, 61.0, 100.0);
        let k = 4.0;
        let pas = compose_pas(
            &set,
            &AntennaPattern::wide_beam(180.0),
            &LocalScatterConfig::default(),
            Some(&LosConfig {
                rice_k: k,
                angle_deg: 10.0,
            }),
            1000,
            &StreamSeeder::new(9, 0),
        )
        .unwrap();
        let w0 = {
            let p = tdl::load_tdl_profile(ProfileId::TdlB).unwrap();
            tdl::normalize_powers(&p).unwrap().0[0]
        };
        let local = pas
            .components
            .iter()
            .find(|c| c.kind == ComponentKind::Local)
            .unwrap();
        let los = pas
            .components
            .iter()
            .find(|c| c.kind == ComponentKind::LineOfSight)
            .unwrap();
        assert_relative_eq!(local.mass, w0 / (k + 1.0), max_relative = 1e-9);
        assert_relative_eq!(los.mass, w0 * k / (k + 1.0), max_relative = 1e-9);
        assert_eq!(los.angles_deg, vec![10.0]);
        assert_relative_eq!(pas.total_weight(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn omni_rx_is_identity() {
        let pas = compose_default(500, 42);
        let filtered = apply_rx_pattern(&pas, &AntennaPattern::omni()).unwrap();
        assert_eq!(pas, filtered);
    }

    #[test]
    fn rx_filter_preserves_total_and_reshapes() {
        let pas = compose_default(5000, 42);
        let rx = AntennaPattern::narrow_beam(0.0);
        let filtered = apply_rx_pattern(&pas, &rx).unwrap();
        assert_relative_eq!(
            filtered.total_weight(),
            pas.total_weight(),
            max_relative = 1e-12
        );
        let before = pas.angle_spread().unwrap().sigma_deg;
        let after = filtered.angle_spread().unwrap().sigma_deg;
        assert!(
            after < before,
            "narrow Rx should shrink the spread: {after} vs {before}"
        );
    }

    #[test]
    fn starving_the_beam_errors() {
        // A single atom at 180 deg seen through a narrow beam at 0 deg.
        let pas = Pas {
            components: vec![PasComponent {
                kind: ComponentKind::LineOfSight,
                mass: 1.0,
                angles_deg: vec![180.0],
                weights: vec![1.0],
            }],
        };
        let rx = AntennaPattern::narrow_beam(0.0);
        match apply_rx_pattern(&pas, &rx) {
            Err(Error::BeamCapturesNoEnergy) => {}
            other => panic!("expected BeamCapturesNoEnergy, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_pdp_rejected() {
        let mut set = test_set(ProfileId::TdlA, 61.0, 100.0);
        for w in &mut set.tap_weights {
            *w = 0.0;
        }
        let err = compose_pas(
            &set,
            &AntennaPattern::omni(),
            &LocalScatterConfig::default(),
            None,
            100,
            &StreamSeeder::new(1, 0),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegeneratePdp));
    }

    #[test]
    fn reception_symmetry_in_tx_pointing() {
        // Mirroring the transmit boresight mirrors the spectrum; the spread
        // agrees within Monte-Carlo tolerance (streams are independent).
        let set = test_set(ProfileId::TdlA, 61.0, 100.0);
        let cfg = LocalScatterConfig::default();
        let run = |alpha: f64, idx: u64| {
            compose_pas(
                &set,
                &AntennaPattern::narrow_beam(alpha),
                &cfg,
                None,
                20_000,
                &StreamSeeder::new(5, idx),
            )
            .unwrap()
            .angle_spread()
            .unwrap()
            .sigma_deg
        };
        for (i, alpha) in [45.0, 90.0, 135.0].iter().enumerate() {
            let plus = run(*alpha, 2 * i as u64);
            let minus = run(-*alpha, 2 * i as u64 + 1);
            assert!(
                (plus - minus).abs() < 1.5,
                "alpha={alpha}: {plus} vs {minus}"
            );
        }
    }
}
