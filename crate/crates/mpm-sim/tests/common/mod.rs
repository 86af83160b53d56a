//! Shared helpers for the integration suites.
//!
//! The quadrature oracle below is an independent re-implementation of the
//! angular-moment math: it has its own angle wrapping, its own Bessel series,
//! and its own density evaluations, and it computes the rms angle spread by
//! dense midpoint quadrature instead of Monte Carlo. Estimator tests compare
//! the library's sampled statistics against these values so that a shared bug
//! cannot cancel out.

#![allow(dead_code)]

use std::sync::OnceLock;

use mpm_sim::pas::LocalScatterConfig;
use mpm_sim::runner::{
    scenario_table, BeamPreset, OutputRecord, TableKind, DEFAULT_SAMPLES, DEFAULT_SEED,
};
use mpm_sim::tdl::ProfileId;

/// Quadrature grid step in degrees. 0.01 deg resolves every density the suite
/// integrates (the sharpest is the 7.8 deg beam, ~780 points across its width).
pub const ORACLE_STEP_DEG: f64 = 0.01;

/// Fold an angle into (-180, 180] without calling into the library.
pub fn oracle_wrap_deg(mut x: f64) -> f64 {
    while x > 180.0 {
        x -= 360.0;
    }
    while x <= -180.0 {
        x += 360.0;
    }
    x
}

/// rms spread of a possibly unnormalized density over (-180, 180], by midpoint
/// quadrature. Normalization happens here, so the caller's density only has to
/// be proportional to the truth.
pub fn oracle_spread_deg(density: impl Fn(f64) -> f64) -> f64 {
    let bins = (360.0 / ORACLE_STEP_DEG).round() as usize;
    let mut w_sum = 0.0;
    let mut m1 = 0.0;
    let mut m2 = 0.0;
    for k in 0..bins {
        let phi = -180.0 + ORACLE_STEP_DEG * (k as f64 + 0.5);
        let w = density(phi);
        w_sum += w;
        m1 += w * phi;
        m2 += w * phi * phi;
    }
    assert!(w_sum > 0.0, "oracle density integrated to zero");
    let mean = m1 / w_sum;
    ((m2 / w_sum) - mean * mean).max(0.0).sqrt()
}

/// ln I0(kappa) by plain series accumulation; adequate for the kappa <= 50
/// range the acceptance suite exercises.
pub fn oracle_ln_i0(kappa: f64) -> f64 {
    let x = kappa * kappa / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    while term > sum * 1e-18 {
        term *= x / (k * k);
        sum += term;
        k += 1.0;
    }
    sum.ln()
}

/// Unnormalized von Mises density at `phi_deg` for mean 0.
pub fn oracle_von_mises_density(kappa: f64, phi_deg: f64) -> f64 {
    (kappa * phi_deg.to_radians().cos() - oracle_ln_i0(kappa)).exp()
}

/// Unnormalized Gaussian beam power pattern with the given half-power width.
pub fn oracle_beam_density(hpbw_deg: f64, boresight_deg: f64, phi_deg: f64) -> f64 {
    let delta = oracle_wrap_deg(phi_deg - boresight_deg);
    let x = 2.0 * delta / hpbw_deg;
    (-std::f64::consts::LN_2 * x * x).exp()
}

/// Closed-form spread of the uniform distribution on a 360 deg support.
pub fn uniform_spread_deg() -> f64 {
    360.0 / 12f64.sqrt()
}

static RECEPTION_TABLE: OnceLock<Vec<OutputRecord>> = OnceLock::new();

/// Full reception-side scenario table (both profiles, both beam presets,
/// turned transmit beam, omni receiver) at production sample counts. Computed
/// once per test binary and shared by every ordering check.
pub fn reception_table() -> &'static [OutputRecord] {
    RECEPTION_TABLE.get_or_init(|| {
        scenario_table(
            TableKind::Reception,
            &BeamPreset::BOTH,
            &LocalScatterConfig::default(),
            DEFAULT_SAMPLES,
            DEFAULT_SEED,
            0,
        )
        .expect("reception table")
    })
}

/// Look up one cell of the cached reception table.
pub fn reception_cell(scenario: &str, profile: ProfileId, tx_kind: &str) -> f64 {
    reception_table()
        .iter()
        .find(|r| r.scenario == scenario && r.tdl == profile.name() && r.tx_kind == tx_kind)
        .unwrap_or_else(|| panic!("missing cell {scenario}/{}/{tx_kind}", profile.name()))
        .as_reception_deg
}

/// Print the uniform one-line verdict the acceptance suite emits per criterion.
pub fn verdict(name: &str, pass: bool, details: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[acceptance] {name}: {tag} ({details})");
}
