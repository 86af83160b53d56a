//! Sweeps the transmit pointing angle and prints spread-vs-direction curves.
//!
//! The transmit beam turns from alpha_t = 0 (straight at the receiver) to
//! 180 deg (turned away); the receiver stays omnidirectional. Both beam
//! presets run side by side, so the output shows how the wide beam excites
//! more of each scattering ellipse at every pointing angle. Every grid
//! point draws its own RNG streams, keyed by position, so the curve is
//! reproducible point by point.
//!
//! Run with `cargo run --release --example alpha_sweep`.

use mpm_sim::runner::{sweep_alpha_t, BeamPreset, RunConfig};
use mpm_sim::tdl::{scenario_by_id, ProfileId};

fn main() -> mpm_sim::Result<()> {
    let scenario = scenario_by_id("Sc5")?;
    let grid: Vec<f64> = (0..=12).map(|k| k as f64 * 15.0).collect();

    let mut curves = Vec::new();
    for preset in BeamPreset::BOTH {
        let mut cfg = RunConfig::new(scenario, ProfileId::TdlA, preset.pattern(180.0));
        cfg.n_per_component = 20_000;
        cfg.stderr_resamples = 0;
        curves.push(sweep_alpha_t(&cfg, &grid)?);
    }

    println!(
        "# {} / {} reception spread vs transmit pointing",
        scenario.id,
        ProfileId::TdlA.name()
    );
    println!("# alpha_t_deg  as_nba_deg  as_wba_deg");
    for (i, &alpha) in grid.iter().enumerate() {
        println!(
            "{alpha:11} {:11.4} {:11.4}",
            curves[0][i].1.reception.sigma_deg,
            curves[1][i].1.reception.sigma_deg
        );
    }
    Ok(())
}
