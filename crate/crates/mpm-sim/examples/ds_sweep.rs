//! Sweeps the delay spread at fixed geometry and prints spread-vs-DS curves.
//!
//! Larger delay spreads push the scattering ellipses further out, widening
//! the arrival angles of the delayed taps; the reception spread grows
//! monotonically along the sweep. All points share RNG streams (common
//! random numbers), so the printed curve is monotone sample-by-sample, not
//! just in expectation.
//!
//! Run with `cargo run --release --example ds_sweep`.

use mpm_sim::antenna::AntennaPattern;
use mpm_sim::runner::{sweep_ds, RunConfig};
use mpm_sim::tdl::{scenario_by_id, ProfileId};

fn main() -> mpm_sim::Result<()> {
    let scenario = scenario_by_id("Sc8")?;
    let ds_list = [10.0, 16.0, 25.0, 40.0, 63.0, 100.0, 160.0, 250.0, 400.0, 630.0, 1000.0];

    let mut cfg = RunConfig::new(
        scenario,
        ProfileId::TdlA,
        AntennaPattern::wide_beam(180.0),
    );
    cfg.n_per_component = 20_000;
    cfg.stderr_resamples = 0;
    let points = sweep_ds(&cfg, &ds_list)?;

    println!(
        "# {} geometry (D = {} m), {} wide beam turned away",
        scenario.environment.id(),
        scenario.distance_m,
        ProfileId::TdlA.name()
    );
    println!("# ds_ns  as_reception_deg");
    for (ds, result) in &points {
        println!("{ds:6} {:10.4}", result.reception.sigma_deg);
    }
    Ok(())
}
