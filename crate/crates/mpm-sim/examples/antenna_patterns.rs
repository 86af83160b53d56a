//! Tours the antenna patterns: gain profiles, pattern spreads, sidelobes.
//!
//! The directional patterns are Gaussian in power with a given half-power
//! beamwidth; the spread of each pattern treated as an angular density is
//! the single-beam limit of the simulation. The optional sidelobe floor
//! lifts the far-out gain and widens that spread, which is the library-only
//! knob for studying imperfect beams.
//!
//! Run with `cargo run --release --example antenna_patterns`.

use mpm_sim::antenna::{pattern_angle_spread, AntennaPattern};

fn main() -> mpm_sim::Result<()> {
    let omni = AntennaPattern::omni();
    let nba = AntennaPattern::narrow_beam(0.0);
    let wba = AntennaPattern::wide_beam(0.0);
    let floored = wba.with_sidelobe_floor(-30.0)?;

    println!("pattern   hpbw_deg  gain_dbi  spread_deg");
    for (name, p) in [("omni", &omni), ("nba", &nba), ("wba", &wba), ("wba-sl", &floored)] {
        println!(
            "{name:<8} {:9} {:9} {:11.2}",
            p.hpbw_deg,
            p.gain_dbi,
            pattern_angle_spread(p)
        );
    }

    println!();
    println!("relative power gain vs offset from boresight");
    println!("offset_deg      nba        wba     wba-sl");
    for offset in [0.0, 3.9, 7.8, 24.7, 49.4, 90.0, 180.0] {
        println!(
            "{offset:10} {:10.6} {:10.6} {:10.6}",
            nba.power_gain(offset),
            wba.power_gain(offset),
            floored.power_gain(offset)
        );
    }
    println!();
    println!(
        "note: gain is exactly 1/2 at hpbw/2 (nba: {:.6}, wba: {:.6})",
        nba.power_gain(7.8 / 2.0),
        wba.power_gain(49.4 / 2.0)
    );
    Ok(())
}
