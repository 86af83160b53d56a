//! Tapped-delay-line (TDL) power delay profiles and the scenario catalog.
//!
//! The two bundled NLOS profiles (TDL-A, TDL-B) follow 3GPP TR 38.901,
//! Tables 7.7.2-1 and 7.7.2-2: 23 taps each, delays normalized to a unit
//! rms delay spread. [`scale_delays`] turns the normalized delays into
//! physical excess delays for a chosen delay spread; [`normalize_powers`]
//! converts the dB tap powers into linear weights that sum to one.
//!
//! Profiles are embedded in the binary. Setting the `MPM_DATA_DIR`
//! environment variable redirects loading to `tdl_a.txt` / `tdl_b.txt`
//! inside that directory, parsed with the same format and validation.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Environment variable that overrides the built-in profile data.
pub const DATA_DIR_ENV: &str = "MPM_DATA_DIR";

const TDL_A_TEXT: &str = include_str!("../data/tdl_a.txt");
const TDL_B_TEXT: &str = include_str!("../data/tdl_b.txt");

/// Identifier of a bundled delay profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileId {
    TdlA,
    TdlB,
}

impl ProfileId {
    /// Both bundled profiles, in catalog order.
    pub const ALL: [ProfileId; 2] = [ProfileId::TdlA, ProfileId::TdlB];

    /// Canonical display name (`TDL-A` / `TDL-B`).
    pub fn name(self) -> &'static str {
        match self {
            ProfileId::TdlA => "TDL-A",
            ProfileId::TdlB => "TDL-B",
        }
    }

    fn file_name(self) -> &'static str {
        match self {
            ProfileId::TdlA => "tdl_a.txt",
            ProfileId::TdlB => "tdl_b.txt",
        }
    }

    fn builtin_text(self) -> &'static str {
        match self {
            ProfileId::TdlA => TDL_A_TEXT,
            ProfileId::TdlB => TDL_B_TEXT,
        }
    }
}

impl fmt::Display for ProfileId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProfileId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "TDL-A" | "TDLA" | "A" => Ok(ProfileId::TdlA),
            "TDL-B" | "TDLB" | "B" => Ok(ProfileId::TdlB),
            _ => Err(Error::Unknown {
                what: "delay profile",
                name: s.to_string(),
            }),
        }
    }
}

/// One tap of a delay profile: excess delay and power.
///
/// In a freshly loaded profile the delay is normalized (unit rms delay
/// spread); after [`scale_delays`] it is a physical delay in nanoseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tap {
    pub delay_ns: f64,
    pub power_db: f64,
}

/// An ordered tapped-delay-line profile.
///
/// Invariants (validated on load and after scaling): at least one tap,
/// delays finite, nondecreasing and free of duplicates, first delay zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TapDelayLine {
    pub profile: ProfileId,
    pub taps: Vec<Tap>,
}

impl TapDelayLine {
    fn validate(&self, source: &str) -> Result<()> {
        if self.taps.is_empty() {
            return Err(Error::Domain(format!("{source}: profile has no taps")));
        }
        for (i, t) in self.taps.iter().enumerate() {
            if !t.delay_ns.is_finite() || !t.power_db.is_finite() {
                return Err(Error::Domain(format!(
                    "{source}: tap {i} has a non-finite field"
                )));
            }
        }
        if self.taps[0].delay_ns != 0.0 {
            return Err(Error::Domain(format!(
                "{source}: first tap delay must be zero, got {}",
                self.taps[0].delay_ns
            )));
        }
        for w in self.taps.windows(2) {
            if w[1].delay_ns <= w[0].delay_ns {
                return Err(Error::Domain(format!(
                    "{source}: tap delays must be strictly increasing \
                     ({} then {})",
                    w[0].delay_ns, w[1].delay_ns
                )));
            }
        }
        Ok(())
    }
}

/// Linear tap weights normalized to unit total power.
///
/// Index order matches the taps of the profile they were derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedWeights(pub Vec<f64>);

impl NormalizedWeights {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Loads a bundled profile, honoring the `MPM_DATA_DIR` override.
pub fn load_tdl_profile(id: ProfileId) -> Result<TapDelayLine> {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => {
            let path: PathBuf = PathBuf::from(dir).join(id.file_name());
            let text = std::fs::read_to_string(&path)?;
            parse_tdl_text(id, &text, &path.display().to_string())
        }
        None => parse_tdl_text(id, id.builtin_text(), id.file_name()),
    }
}

/// Parses profile text in the bundled format.
///
/// Lines are `tap_index normalized_delay power_db`, whitespace separated;
/// blank lines and `#` comments are ignored. Tap indices must run 1..=N in
/// file order. Taps are sorted by delay afterwards (the source tables are
/// not delay-ordered everywhere).
pub fn parse_tdl_text(id: ProfileId, text: &str, file: &str) -> Result<TapDelayLine> {
    let fail = |line: usize, msg: String| Error::DataFormat {
        file: file.to_string(),
        line,
        msg,
    };
    let mut taps: Vec<Tap> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(fail(
                lineno,
                format!("expected 3 fields, found {}", fields.len()),
            ));
        }
        let index: usize = fields[0]
            .parse()
            .map_err(|e| fail(lineno, format!("bad tap index `{}`: {e}", fields[0])))?;
        if index != taps.len() + 1 {
            return Err(fail(
                lineno,
                format!("tap index {index} out of order, expected {}", taps.len() + 1),
            ));
        }
        let delay_ns: f64 = fields[1]
            .parse()
            .map_err(|e| fail(lineno, format!("bad delay `{}`: {e}", fields[1])))?;
        let power_db: f64 = fields[2]
            .parse()
            .map_err(|e| fail(lineno, format!("bad power `{}`: {e}", fields[2])))?;
        if !delay_ns.is_finite() || delay_ns < 0.0 {
            return Err(fail(lineno, format!("delay must be finite and >= 0, got {delay_ns}")));
        }
        if !power_db.is_finite() {
            return Err(fail(lineno, format!("power must be finite, got {power_db}")));
        }
        taps.push(Tap { delay_ns, power_db });
    }
    if taps.is_empty() {
        return Err(fail(0, "no taps found".to_string()));
    }
    taps.sort_by(|x, y| x.delay_ns.total_cmp(&y.delay_ns));
    let tdl = TapDelayLine { profile: id, taps };
    tdl.validate(file)?;
    Ok(tdl)
}

/// Scales normalized tap delays by a delay spread in nanoseconds.
pub fn scale_delays(profile: &TapDelayLine, ds_ns: f64) -> Result<TapDelayLine> {
    if !ds_ns.is_finite() || ds_ns <= 0.0 {
        return Err(Error::Domain(format!(
            "delay spread must be finite and > 0, got {ds_ns}"
        )));
    }
    let taps = profile
        .taps
        .iter()
        .map(|t| Tap {
            delay_ns: t.delay_ns * ds_ns,
            power_db: t.power_db,
        })
        .collect();
    let scaled = TapDelayLine {
        profile: profile.profile,
        taps,
    };
    scaled.validate("scaled profile")?;
    Ok(scaled)
}

/// Converts dB tap powers to linear weights summing to one.
pub fn normalize_powers(profile: &TapDelayLine) -> Result<NormalizedWeights> {
    let linear: Vec<f64> = profile
        .taps
        .iter()
        .map(|t| 10f64.powf(t.power_db / 10.0))
        .collect();
    let total: f64 = linear.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::DegeneratePdp);
    }
    Ok(NormalizedWeights(linear.iter().map(|w| w / total).collect()))
}

/// Propagation environment family of a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Environment {
    IndoorOffice,
    UMiStreetCanyon,
    UMa,
    O2I,
}

impl Environment {
    pub const ALL: [Environment; 4] = [
        Environment::IndoorOffice,
        Environment::UMiStreetCanyon,
        Environment::UMa,
        Environment::O2I,
    ];

    /// Stable lowercase identifier used by the CLI and in output records.
    pub fn id(self) -> &'static str {
        match self {
            Environment::IndoorOffice => "indoor-office",
            Environment::UMiStreetCanyon => "umi-street-canyon",
            Environment::UMa => "uma",
            Environment::O2I => "o2i",
        }
    }

    /// Tx-Rx distance assigned to this environment family, meters.
    pub const fn distance_m(self) -> f64 {
        match self {
            Environment::IndoorOffice => 50.0,
            Environment::UMiStreetCanyon => 100.0,
            Environment::UMa => 200.0,
            Environment::O2I => 100.0,
        }
    }
}

impl fmt::Display for Environment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Environment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "indoor-office" | "indoor" | "office" => Ok(Environment::IndoorOffice),
            "umi-street-canyon" | "umi" => Ok(Environment::UMiStreetCanyon),
            "uma" => Ok(Environment::UMa),
            "o2i" => Ok(Environment::O2I),
            _ => Err(Error::Unknown {
                what: "environment",
                name: s.to_string(),
            }),
        }
    }
}

/// Qualitative label of a scenario's delay-spread setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PdpFlavor {
    Short,
    Normal,
    LongDelay,
}

impl PdpFlavor {
    pub fn id(self) -> &'static str {
        match self {
            PdpFlavor::Short => "short",
            PdpFlavor::Normal => "normal",
            PdpFlavor::LongDelay => "long-delay",
        }
    }
}

impl fmt::Display for PdpFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// One catalog entry: environment, delay-spread flavor, and geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    /// Stable identifier `Sc1`..`Sc11`.
    pub id: &'static str,
    pub environment: Environment,
    pub flavor: PdpFlavor,
    /// rms delay spread in nanoseconds.
    pub ds_ns: f64,
    /// Tx-Rx distance in meters.
    pub distance_m: f64,
    /// Carrier frequency in GHz (metadata only; the model is geometric).
    pub carrier_ghz: f64,
}

macro_rules! scenario {
    ($id:literal, $env:ident, $flavor:ident, $ds:literal) => {
        Scenario {
            id: $id,
            environment: Environment::$env,
            flavor: PdpFlavor::$flavor,
            ds_ns: $ds,
            distance_m: Environment::$env.distance_m(),
            carrier_ghz: 39.0,
        }
    };
}

/// The eleven bundled scenarios, ordered by environment then delay spread.
pub const SCENARIOS: [Scenario; 11] = [
    scenario!("Sc1", IndoorOffice, Short, 16.0),
    scenario!("Sc2", IndoorOffice, Normal, 18.0),
    scenario!("Sc3", IndoorOffice, LongDelay, 41.0),
    scenario!("Sc4", UMiStreetCanyon, Short, 30.0),
    scenario!("Sc5", UMiStreetCanyon, Normal, 61.0),
    scenario!("Sc6", UMiStreetCanyon, LongDelay, 297.0),
    scenario!("Sc7", UMa, Short, 78.0),
    scenario!("Sc8", UMa, Normal, 249.0),
    scenario!("Sc9", UMa, LongDelay, 786.0),
    scenario!("Sc10", O2I, Normal, 240.0),
    scenario!("Sc11", O2I, LongDelay, 616.0),
];

/// Returns the full scenario catalog.
pub fn scenario_catalog() -> &'static [Scenario] {
    &SCENARIOS
}

/// Looks up a scenario by its `Sc<n>` identifier (case-insensitive).
pub fn scenario_by_id(id: &str) -> Result<Scenario> {
    let want = id.trim().to_ascii_lowercase();
    SCENARIOS
        .iter()
        .find(|s| s.id.to_ascii_lowercase() == want)
        .copied()
        .ok_or_else(|| Error::Unknown {
            what: "scenario",
            name: id.to_string(),
        })
}
