//! Bundled reference angle-spread values used for calibration targets and
//! regression comparison.

use crate::error::{Error, Result};
use crate::runner::TableKind;
use crate::tdl::{ProfileId, DATA_DIR_ENV};

const REFERENCE_TEXT: &str = include_str!("../data/reference_angle_spread.csv");
const REFERENCE_FILE: &str = "reference_angle_spread.csv";

/// One published reference cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceValue {
    pub scenario: String,
    pub profile: ProfileId,
    /// Beam label: `nba` or `wba`.
    pub antenna: String,
    pub stage: TableKind,
    pub as_deg: f64,
}

/// Loads the bundled reference table, honoring the `MPM_DATA_DIR`
/// override.
pub fn reference_values() -> Result<Vec<ReferenceValue>> {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => {
            let path = std::path::PathBuf::from(dir).join(REFERENCE_FILE);
            let text = std::fs::read_to_string(&path)?;
            parse_reference_text(&text, &path.display().to_string())
        }
        None => parse_reference_text(REFERENCE_TEXT, REFERENCE_FILE),
    }
}

fn parse_reference_text(text: &str, file: &str) -> Result<Vec<ReferenceValue>> {
    let fail = |line: usize, msg: String| Error::DataFormat {
        file: file.to_string(),
        line,
        msg,
    };
    let mut out = Vec::new();
    let mut saw_header = false;
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            // First data-ish line is the column header.
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 5 {
            return Err(fail(
                lineno,
                format!("expected 5 fields, found {}", fields.len()),
            ));
        }
        let profile: ProfileId = fields[1]
            .parse()
            .map_err(|e: Error| fail(lineno, e.to_string()))?;
        let stage: TableKind = fields[3]
            .parse()
            .map_err(|e: Error| fail(lineno, e.to_string()))?;
        let as_deg: f64 = fields[4]
            .parse()
            .map_err(|e| fail(lineno, format!("bad spread `{}`: {e}", fields[4])))?;
        if !as_deg.is_finite() || as_deg <= 0.0 {
            return Err(fail(lineno, format!("spread must be > 0, got {as_deg}")));
        }
        out.push(ReferenceValue {
            scenario: fields[0].to_string(),
            profile,
            antenna: fields[2].to_ascii_lowercase(),
            stage,
            as_deg,
        });
    }
    if out.is_empty() {
        return Err(fail(0, "no reference rows found".to_string()));
    }
    Ok(out)
}

/// Convenience lookup of one reference cell.
pub fn reference_lookup(
    values: &[ReferenceValue],
    scenario: &str,
    profile: ProfileId,
    antenna: &str,
    stage: TableKind,
) -> Option<f64> {
    values
        .iter()
        .find(|v| {
            v.scenario == scenario
                && v.profile == profile
                && v.antenna == antenna
                && v.stage == stage
        })
        .map(|v| v.as_deg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_reference_loads() {
        let vals = reference_values().unwrap();
        // 44 reception cells + 44 rx-output cells.
        assert_eq!(vals.len(), 88);
        assert_eq!(
            reference_lookup(&vals, "Sc9", ProfileId::TdlA, "wba", TableKind::Reception),
            Some(130.8)
        );
        assert_eq!(
            reference_lookup(&vals, "Sc1", ProfileId::TdlB, "nba", TableKind::Reception),
            Some(16.9)
        );
        assert_eq!(
            reference_lookup(&vals, "Sc9", ProfileId::TdlA, "wba", TableKind::RxOutput),
            Some(7.6)
        );
        assert_eq!(
            reference_lookup(&vals, "Sc3", ProfileId::TdlB, "nba", TableKind::RxOutput),
            Some(3.5)
        );
    }
}
