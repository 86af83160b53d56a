//! Monte-Carlo simulator for the rms angle spread of multipath radio
//! channels received through directional antennas.
//!
//! The model composes a power angular spectrum (PAS) at the receiver from
//! three ingredients:
//!
//! * a **tapped-delay-line power profile** (3GPP TR 38.901 TDL-A/TDL-B,
//!   NLOS) scaled to a scenario's rms delay spread ([`tdl`]);
//! * a **multi-elliptical scattering geometry**: every delayed tap defines
//!   a confocal ellipse of single-bounce scatterers around the link
//!   ([`geometry`]);
//! * **directional Gaussian antenna patterns** that shape departure angles
//!   at the transmitter and weight arrivals at the receiver ([`antenna`]).
//!
//! The zero-delay tap is modeled as von Mises local scattering around the
//! receiver, optionally split with a line-of-sight ray ([`pas`]). The
//! headline output is the rms angle spread, computed from plain moments of
//! the wrapped arrival angle ([`metrics`]), with Poisson-bootstrap error
//! bars and deterministic seeding throughout ([`runner`], [`rng`]).
//!
//! A catalog of eleven standard scenarios (indoor office, street canyon,
//! urban macro, outdoor-to-indoor at 39 GHz) and published reference
//! spreads for them are bundled ([`tdl::scenario_catalog`], [`reference`]).
//!
//! # Quick start
//!
//! ```
//! use mpm_sim::antenna::AntennaPattern;
//! use mpm_sim::runner::{run_point, RunConfig};
//! use mpm_sim::tdl::{scenario_by_id, ProfileId};
//!
//! let mut cfg = RunConfig::new(
//!     scenario_by_id("Sc5").unwrap(),
//!     ProfileId::TdlA,
//!     AntennaPattern::narrow_beam(180.0), // Tx pointed away from the Rx
//! );
//! cfg.n_per_component = 2_000; // keep the doc test fast
//! cfg.stderr_resamples = 10;
//! let result = run_point(&cfg).unwrap();
//! assert!(result.reception.sigma_deg > 0.0);
//! assert!(result.reception.sigma_deg < 180.0);
//! ```
//!
//! The `mpm-sim` binary exposes the same drivers as subcommands (`run`,
//! `sweep-alpha`, `sweep-ds`, `table`, `plotdata`); the `examples/`
//! directory walks through each major capability.

pub mod antenna;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod metrics;
pub mod pas;
pub mod reference;
pub mod rng;
pub mod runner;
pub mod tdl;

pub use error::{Error, Result};
