//! Prints the full scenario table as CSV, like the CLI's `table` subcommand.
//!
//! Every catalog scenario runs under both delay profiles and both beam
//! presets with the transmit beam turned away from the receiver. The sample
//! count here is reduced so the example finishes in a few seconds; the CLI
//! default (`mpm-sim table --which reception`) uses n = 200000 per
//! component plus bootstrap error bars.
//!
//! Run with `cargo run --release --example scenario_table`.

use std::io::Write;

use mpm_sim::pas::LocalScatterConfig;
use mpm_sim::runner::{
    scenario_table, write_records_csv, BeamPreset, TableKind, DEFAULT_SEED,
};

fn main() -> mpm_sim::Result<()> {
    let records = scenario_table(
        TableKind::Reception,
        &BeamPreset::BOTH,
        &LocalScatterConfig::default(),
        20_000,
        DEFAULT_SEED,
        0,
    )?;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    write_records_csv(&mut lock, &records)?;
    lock.flush()?;
    Ok(())
}
