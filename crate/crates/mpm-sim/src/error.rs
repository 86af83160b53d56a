//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide error enumeration.
#[derive(Debug, Error)]
pub enum Error {
    /// An identifier (profile, scenario, antenna kind, ...) was not recognized.
    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },

    /// A data file failed validation; carries the file name and line number.
    #[error("{file}:{line}: {msg}")]
    DataFormat {
        file: String,
        line: usize,
        msg: String,
    },

    /// A parameter is outside its documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The power delay profile has no usable taps.
    #[error("degenerate PDP: total tap power is zero")]
    DegeneratePdp,

    /// The receive pattern filtered out essentially all arriving power.
    #[error("beam captures no energy: filtered power below 1e-9 of input")]
    BeamCapturesNoEnergy,

    /// Command-line usage problem detected after argument parsing (for
    /// example a required flag missing from both the command line and the
    /// config file). The CLI maps this to exit code 2.
    #[error("{0}")]
    Usage(String),

    /// Underlying I/O failure (data directory access and similar).
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
