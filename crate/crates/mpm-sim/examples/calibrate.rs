//! Fits the local-scattering concentration against the bundled reference
//! table and reports the outcome.
//!
//! One global von Mises concentration is chosen to minimize the worst
//! relative error between predicted reception spreads and the bundled
//! per-scenario reference column (second delay profile, narrow beam). The
//! fit lands far below the library default of 50: matching the published
//! spread levels requires a nearly uniform local cluster, which quantifies
//! how much of those levels the delayed taps cannot supply on their own
//! (see the geometry_tour example for why their arrival cones are narrow).
//!
//! Run with `cargo run --release --example calibrate`.

use mpm_sim::reference::{reference_lookup, reference_values};
use mpm_sim::runner::{calibrate_local_kappa, BeamPreset, TableKind, DEFAULT_SEED};
use mpm_sim::tdl::{scenario_catalog, ProfileId, Scenario};

fn main() -> mpm_sim::Result<()> {
    let refs = reference_values()?;
    let targets: Vec<(Scenario, f64)> = scenario_catalog()
        .iter()
        .map(|s| {
            let t = reference_lookup(&refs, s.id, ProfileId::TdlB, "nba", TableKind::Reception)
                .expect("bundled reference cell");
            (*s, t)
        })
        .collect();

    let outcome = calibrate_local_kappa(
        ProfileId::TdlB,
        BeamPreset::Narrow,
        &targets,
        50_000,
        DEFAULT_SEED,
    )?;

    println!(
        "best global concentration: kappa = {:.3} (local spread {:.2} deg)",
        outcome.kappa, outcome.local_sigma_deg
    );
    println!("worst relative error across targets: {:.1}%", 100.0 * outcome.max_rel_error);
    println!();
    println!("scenario  predicted_deg  reference_deg  error");
    for (id, predicted, target) in &outcome.per_scenario {
        println!(
            "{id:<9} {predicted:12.2} {target:14.2} {:+6.1}%",
            100.0 * (predicted - target) / target
        );
    }
    Ok(())
}
