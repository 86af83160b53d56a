//! High-level simulation drivers: single points, sweeps, scenario tables,
//! bootstrap error bars, and calibration of the local-scattering
//! concentration against bundled reference values.

use std::io::Write;

use serde::Serialize;

use crate::antenna::AntennaPattern;
use crate::error::{Error, Result};
use crate::geometry::build_ellipses;
use crate::metrics::AngleSpread;
use crate::pas::{apply_rx_pattern, compose_pas, ComponentKind, LocalScatterConfig, LosConfig, Pas};
use crate::rng::{
    SimRng, StreamSeeder, CHANNEL_BOOTSTRAP, CHANNEL_BOOTSTRAP_RX,
};
use crate::tdl::{load_tdl_profile, normalize_powers, scale_delays, ProfileId, Scenario};

/// Minimum Monte-Carlo samples per mixture component accepted by the
/// drivers (the low-level composition allows fewer for unit testing).
pub const MIN_SAMPLES: usize = 1_000;

/// Default Monte-Carlo samples per mixture component.
pub const DEFAULT_SAMPLES: usize = 200_000;

/// Default base seed of the CLI and drivers.
pub const DEFAULT_SEED: u64 = 42;

/// Default number of Poisson bootstrap resamples for error bars.
pub const DEFAULT_BOOTSTRAP_RESAMPLES: usize = 50;

/// Full description of one simulation point.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub profile_id: ProfileId,
    /// Transmit pattern; its boresight is the pointing angle `alpha_t`.
    pub tx: AntennaPattern,
    /// Receive pattern; omni means "report the unfiltered reception
    /// spread only".
    pub rx: AntennaPattern,
    pub local: LocalScatterConfig,
    pub los: Option<LosConfig>,
    pub n_per_component: usize,
    pub base_seed: u64,
    /// Bootstrap resamples for the error bar; 0 skips the bootstrap.
    pub stderr_resamples: usize,
}

impl RunConfig {
    /// Conventional starting point: Tx pointed away from the receiver,
    /// omni Rx, default local scattering and sampling effort.
    pub fn new(scenario: Scenario, profile_id: ProfileId, tx: AntennaPattern) -> Self {
        RunConfig {
            scenario,
            profile_id,
            tx,
            rx: AntennaPattern::omni(),
            local: LocalScatterConfig::default(),
            los: None,
            n_per_component: DEFAULT_SAMPLES,
            base_seed: DEFAULT_SEED,
            stderr_resamples: DEFAULT_BOOTSTRAP_RESAMPLES,
        }
    }
}

/// Spreads and error bars of one simulation point.
#[derive(Debug, Clone, Copy)]
pub struct RunResult {
    /// Spread of the composed spectrum at the receiver site.
    pub reception: AngleSpread,
    /// Bootstrap standard error of the reception spread (omni Rx only).
    pub reception_stderr_deg: Option<f64>,
    /// Spread after Rx-pattern weighting (directional Rx only).
    pub rx_output: Option<AngleSpread>,
    /// Bootstrap standard error of the Rx-output spread.
    pub rx_output_stderr_deg: Option<f64>,
}

/// Runs one simulation point with sweep index 0.
pub fn run_point(cfg: &RunConfig) -> Result<RunResult> {
    run_point_indexed(cfg, 0)
}

/// Runs one simulation point; `alpha_index` selects the RNG substream and
/// should number the grid points of a sweep.
pub fn run_point_indexed(cfg: &RunConfig, alpha_index: u64) -> Result<RunResult> {
    if cfg.n_per_component < MIN_SAMPLES {
        return Err(Error::Domain(format!(
            "n_per_component must be >= {MIN_SAMPLES}, got {}",
            cfg.n_per_component
        )));
    }
    let pas = compose_point(cfg, alpha_index)?;
    let seeder = StreamSeeder::new(cfg.base_seed, alpha_index);
    let reception = pas.angle_spread()?;
    if crate::antenna::PatternKind::Omni == cfg.rx.kind {
        let se = if cfg.stderr_resamples > 0 {
            Some(bootstrap_stderr(
                &pas,
                &seeder,
                CHANNEL_BOOTSTRAP,
                cfg.stderr_resamples,
            ))
        } else {
            None
        };
        return Ok(RunResult {
            reception,
            reception_stderr_deg: se,
            rx_output: None,
            rx_output_stderr_deg: None,
        });
    }
    let filtered = apply_rx_pattern(&pas, &cfg.rx)?;
    let rx_output = filtered.angle_spread()?;
    let se = if cfg.stderr_resamples > 0 {
        Some(bootstrap_stderr(
            &filtered,
            &seeder,
            CHANNEL_BOOTSTRAP_RX,
            cfg.stderr_resamples,
        ))
    } else {
        None
    };
    Ok(RunResult {
        reception,
        reception_stderr_deg: None,
        rx_output: Some(rx_output),
        rx_output_stderr_deg: se,
    })
}

/// Composes the spectrum for a config without computing statistics.
pub fn compose_point(cfg: &RunConfig, alpha_index: u64) -> Result<Pas> {
    let profile = load_tdl_profile(cfg.profile_id)?;
    let scaled = scale_delays(&profile, cfg.scenario.ds_ns)?;
    let weights = normalize_powers(&scaled)?;
    let set = build_ellipses(&scaled, &weights, cfg.scenario.distance_m)?;
    let seeder = StreamSeeder::new(cfg.base_seed, alpha_index);
    compose_pas(
        &set,
        &cfg.tx,
        &cfg.local,
        cfg.los.as_ref(),
        cfg.n_per_component,
        &seeder,
    )
}

/// Cumulative Poisson(1) thresholds scaled to 32-bit draws, for the fast
/// path of [`poisson_unit`].
fn poisson_thresholds() -> &'static [u64; 13] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<[u64; 13]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0u64; 13];
        let mut p = (-1.0f64).exp();
        let mut cum = p;
        for (k, slot) in t.iter_mut().enumerate() {
            if k > 0 {
                p /= k as f64;
                cum += p;
            }
            *slot = (cum * 4294967296.0) as u64; // 2^32
        }
        t
    })
}

/// Draws one Poisson(1) multiplicity by inverse-CDF walking over a
/// precomputed integer threshold table (one 32-bit draw per sample).
#[inline]
fn poisson_unit(rng: &mut SimRng) -> u64 {
    use rand::RngCore;
    let table = poisson_thresholds();
    let r = rng.next_u32() as u64;
    let mut k = 0u64;
    while (k as usize) < table.len() && r >= table[k as usize] {
        k += 1;
    }
    // Beyond the table the remaining mass is ~1e-13; extend the walk in
    // floating point so the distribution stays correct.
    if k as usize == table.len() {
        let u = (r as f64 + 0.5) / 4294967296.0;
        let mut p = (-1.0f64).exp();
        let mut cum = p;
        let mut j = 0u64;
        while u >= cum && j < 64 {
            j += 1;
            p /= j as f64;
            cum += p;
        }
        k = j;
    }
    k
}

/// Poisson-bootstrap standard error of the angle spread of a spectrum.
///
/// Each resample multiplies every sample weight by an independent
/// Poisson(1) count (a cheap stand-in for multinomial resampling) and
/// recomputes the spread; the returned value is the standard deviation of
/// the resampled spreads.
pub fn bootstrap_stderr(
    pas: &Pas,
    seeder: &StreamSeeder,
    channel_base: u64,
    resamples: usize,
) -> f64 {
    let mut sigmas = Vec::with_capacity(resamples);
    for r in 0..resamples {
        let mut rng = seeder.stream(channel_base + r as u64);
        let mut sw = 0.0f64;
        let mut swa = 0.0f64;
        let mut swa2 = 0.0f64;
        for c in &pas.components {
            for (&a, &w) in c.angles_deg.iter().zip(&c.weights) {
                let m = poisson_unit(&mut rng) as f64;
                if m > 0.0 {
                    let wm = w * m;
                    sw += wm;
                    swa += wm * a;
                    swa2 += wm * a * a;
                }
            }
        }
        if sw > 0.0 {
            let mean = swa / sw;
            sigmas.push((swa2 / sw - mean * mean).max(0.0).sqrt());
        }
    }
    if sigmas.len() < 2 {
        return 0.0;
    }
    let n = sigmas.len() as f64;
    let mean = sigmas.iter().sum::<f64>() / n;
    let var = sigmas.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (n - 1.0);
    var.sqrt()
}

/// Runs an angle sweep: the transmit boresight visits each grid point.
pub fn sweep_alpha_t(cfg: &RunConfig, grid_deg: &[f64]) -> Result<Vec<(f64, RunResult)>> {
    let mut out = Vec::with_capacity(grid_deg.len());
    for (i, &alpha) in grid_deg.iter().enumerate() {
        let mut point = cfg.clone();
        point.tx = point.tx.pointed_at(alpha);
        out.push((alpha, run_point_indexed(&point, i as u64)?));
    }
    Ok(out)
}

/// Runs a delay-spread sweep at fixed geometry and antennas.
///
/// All points share RNG streams (common random numbers), so differences
/// along the sweep reflect the delay spread alone, not resampling noise.
pub fn sweep_ds(cfg: &RunConfig, ds_list_ns: &[f64]) -> Result<Vec<(f64, RunResult)>> {
    let mut out = Vec::with_capacity(ds_list_ns.len());
    for &ds in ds_list_ns {
        let mut point = cfg.clone();
        point.scenario.ds_ns = ds;
        out.push((ds, run_point(&point)?));
    }
    Ok(out)
}

/// Named beam presets used by the scenario tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamPreset {
    Narrow,
    Wide,
}

impl BeamPreset {
    pub const BOTH: [BeamPreset; 2] = [BeamPreset::Narrow, BeamPreset::Wide];

    pub fn pattern(self, boresight_deg: f64) -> AntennaPattern {
        match self {
            BeamPreset::Narrow => AntennaPattern::narrow_beam(boresight_deg),
            BeamPreset::Wide => AntennaPattern::wide_beam(boresight_deg),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BeamPreset::Narrow => "nba",
            BeamPreset::Wide => "wba",
        }
    }
}

/// Which quantity a scenario table reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    /// Spread of the composed spectrum (omni Rx).
    Reception,
    /// Spread after a matching directional Rx pointed at the transmitter.
    RxOutput,
}

impl std::str::FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "reception" => Ok(TableKind::Reception),
            "rx-output" | "rx_output" | "rxoutput" => Ok(TableKind::RxOutput),
            _ => Err(Error::Unknown {
                what: "table kind",
                name: s.to_string(),
            }),
        }
    }
}

/// One output row of a driver, serialized to CSV or JSON lines.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct OutputRecord {
    pub scenario: String,
    pub environment: String,
    pub tdl: String,
    pub ds_ns: f64,
    pub distance_m: f64,
    pub tx_kind: String,
    pub tx_hpbw_deg: f64,
    pub alpha_t_deg: f64,
    pub rx_kind: String,
    pub alpha_r_deg: f64,
    pub as_reception_deg: f64,
    pub as_rx_output_deg: Option<f64>,
    pub mc_stderr_deg: f64,
    pub seed: u64,
}

/// CSV header matching [`OutputRecord::csv_line`].
pub const CSV_HEADER: &str = "scenario,environment,tdl,ds_ns,distance_m,tx_kind,tx_hpbw_deg,\
alpha_t_deg,rx_kind,alpha_r_deg,as_reception_deg,as_rx_output_deg,mc_stderr_deg,seed";

impl OutputRecord {
    /// Builds a record from a config and its result.
    pub fn from_run(cfg: &RunConfig, result: &RunResult) -> Self {
        let (stderr, rx_out) = match result.rx_output {
            Some(r) => (result.rx_output_stderr_deg.unwrap_or(0.0), Some(r.sigma_deg)),
            None => (result.reception_stderr_deg.unwrap_or(0.0), None),
        };
        OutputRecord {
            scenario: cfg.scenario.id.to_string(),
            environment: cfg.scenario.environment.id().to_string(),
            tdl: cfg.profile_id.name().to_string(),
            ds_ns: cfg.scenario.ds_ns,
            distance_m: cfg.scenario.distance_m,
            tx_kind: cfg.tx.label().to_string(),
            tx_hpbw_deg: cfg.tx.hpbw_deg,
            alpha_t_deg: cfg.tx.boresight_deg,
            rx_kind: cfg.rx.label().to_string(),
            alpha_r_deg: cfg.rx.boresight_deg,
            as_reception_deg: result.reception.sigma_deg,
            as_rx_output_deg: rx_out,
            mc_stderr_deg: stderr,
            seed: cfg.base_seed,
        }
    }

    /// One CSV data line (no newline). Angle spreads use 4 decimals;
    /// configuration fields use shortest-roundtrip formatting.
    pub fn csv_line(&self) -> String {
        let rx_out = match self.as_rx_output_deg {
            Some(v) => format!("{v:.4}"),
            None => String::new(),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{:.4},{},{:.4},{}",
            self.scenario,
            self.environment,
            self.tdl,
            self.ds_ns,
            self.distance_m,
            self.tx_kind,
            self.tx_hpbw_deg,
            self.alpha_t_deg,
            self.rx_kind,
            self.alpha_r_deg,
            self.as_reception_deg,
            rx_out,
            self.mc_stderr_deg,
            self.seed
        )
    }

    /// One JSON line (no newline).
    pub fn jsonl_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// Writes records as a CSV document with header.
pub fn write_records_csv<W: Write>(w: &mut W, records: &[OutputRecord]) -> std::io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(w, "{}", r.csv_line())?;
    }
    Ok(())
}

/// Writes records as JSON lines.
pub fn write_records_jsonl<W: Write>(w: &mut W, records: &[OutputRecord]) -> std::io::Result<()> {
    for r in records {
        writeln!(w, "{}", r.jsonl_line())?;
    }
    Ok(())
}

/// Runs the standard scenario grid: every catalog scenario, both delay
/// profiles, the given beam presets, Tx pointed away from the receiver.
///
/// `Reception` rows use an omni Rx; `RxOutput` rows use a matching beam
/// preset at the receiver pointed back at the transmitter (`alpha_r = 0`).
pub fn scenario_table(
    kind: TableKind,
    presets: &[BeamPreset],
    local: &LocalScatterConfig,
    n_per_component: usize,
    base_seed: u64,
    stderr_resamples: usize,
) -> Result<Vec<OutputRecord>> {
    let mut records = Vec::new();
    for scenario in crate::tdl::scenario_catalog() {
        for profile_id in ProfileId::ALL {
            for &preset in presets {
                let mut cfg = RunConfig::new(*scenario, profile_id, preset.pattern(180.0));
                cfg.local = *local;
                cfg.n_per_component = n_per_component;
                cfg.base_seed = base_seed;
                cfg.stderr_resamples = stderr_resamples;
                cfg.rx = match kind {
                    TableKind::Reception => AntennaPattern::omni(),
                    TableKind::RxOutput => preset.pattern(0.0),
                };
                let result = run_point(&cfg)?;
                records.push(OutputRecord::from_run(&cfg, &result));
            }
        }
    }
    Ok(records)
}

/// Parses an `a:b:step` inclusive grid specification in degrees.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Domain(format!(
            "grid must be `start:end:step`, got `{spec}`"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| Error::Domain(format!("bad grid number `{p}`: {e}")))
        })
        .collect::<Result<_>>()?;
    let (start, end, step) = (nums[0], nums[1], nums[2]);
    if !step.is_finite() || step <= 0.0 || !start.is_finite() || !end.is_finite() || end < start {
        return Err(Error::Domain(format!("invalid grid `{spec}`")));
    }
    let mut grid = Vec::new();
    let count = ((end - start) / step).round() as i64;
    let n = if (start + count as f64 * step - end).abs() < 1e-9 * step.max(1.0) {
        count
    } else {
        ((end - start) / step).floor() as i64
    };
    for k in 0..=n {
        grid.push(start + k as f64 * step);
    }
    Ok(grid)
}

/// Linear-moment rms spread of the von Mises local-scattering density,
/// computed by quadrature (mean direction 0).
pub fn local_spread_deg(kappa: f64) -> f64 {
    let step = 0.02f64;
    let n = (360.0 / step).round() as usize;
    let mut m1 = 0.0;
    let mut m2 = 0.0;
    for k in 0..n {
        let phi = -180.0 + step * (k as f64 + 0.5);
        let w = crate::rng::von_mises_density_deg(kappa, 0.0, phi) * step;
        m1 += w * phi;
        m2 += w * phi * phi;
    }
    (m2 - m1 * m1).max(0.0).sqrt()
}

/// Result of calibrating the local-scattering concentration.
#[derive(Debug, Clone)]
pub struct CalibrationOutcome {
    /// Best-fitting von Mises concentration.
    pub kappa: f64,
    /// Linear rms spread of the local density at that concentration.
    pub local_sigma_deg: f64,
    /// Worst relative error across the calibration targets.
    pub max_rel_error: f64,
    /// Per-target `(scenario id, predicted spread, target spread)`.
    pub per_scenario: Vec<(String, f64, f64)>,
}

/// Fits one global von Mises concentration so the predicted reception
/// spreads best match the given per-scenario targets (minimax relative
/// error), for a fixed profile and transmit pattern at `alpha_t = 180`.
///
/// The delayed-tap moments are estimated once by Monte Carlo; the
/// concentration then enters only through the local component, evaluated
/// by quadrature, which makes the search objective smooth.
pub fn calibrate_local_kappa(
    profile_id: ProfileId,
    preset: BeamPreset,
    targets: &[(Scenario, f64)],
    n_per_component: usize,
    base_seed: u64,
) -> Result<CalibrationOutcome> {
    if targets.is_empty() {
        return Err(Error::Domain("no calibration targets".to_string()));
    }
    // Per-scenario constants: zero-delay weight plus delayed-mixture
    // moments under the transmit pattern.
    struct ScenarioMoments {
        id: String,
        w0: f64,
        delayed_m1: f64,
        delayed_m2: f64,
        target: f64,
    }
    let mut moments = Vec::with_capacity(targets.len());
    for (scenario, target) in targets {
        if !(*target > 0.0) {
            return Err(Error::Domain(format!(
                "calibration target for {} must be > 0",
                scenario.id
            )));
        }
        let cfg = RunConfig {
            n_per_component,
            base_seed,
            stderr_resamples: 0,
            ..RunConfig::new(*scenario, profile_id, preset.pattern(180.0))
        };
        let pas = compose_point(&cfg, 0)?;
        let mut w0 = 0.0;
        let mut m1 = 0.0;
        let mut m2 = 0.0;
        for c in &pas.components {
            match c.kind {
                ComponentKind::Local => w0 += c.mass,
                ComponentKind::LineOfSight => w0 += c.mass,
                ComponentKind::Tap(_) => {
                    for (&a, &w) in c.angles_deg.iter().zip(&c.weights) {
                        m1 += w * a;
                        m2 += w * a * a;
                    }
                }
            }
        }
        moments.push(ScenarioMoments {
            id: scenario.id.to_string(),
            w0,
            delayed_m1: m1,
            delayed_m2: m2,
            target: *target,
        });
    }

    let predict = |local_var: f64, m: &ScenarioMoments| -> f64 {
        // Local mean is 0, so it contributes only to the second moment.
        let mean = m.delayed_m1;
        (m.w0 * local_var + m.delayed_m2 - mean * mean)
            .max(0.0)
            .sqrt()
    };
    let objective = |ln_kappa: f64| -> f64 {
        let sigma = local_spread_deg(ln_kappa.exp());
        let var = sigma * sigma;
        moments
            .iter()
            .map(|m| ((predict(var, m) - m.target) / m.target).abs())
            .fold(0.0, f64::max)
    };

    // Golden-section search on ln(kappa).
    let (mut lo, mut hi) = (0.01f64.ln(), 1000f64.ln());
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = objective(x1);
    let mut f2 = objective(x2);
    for _ in 0..80 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2);
        }
    }
    let kappa = (0.5 * (lo + hi)).exp();
    let sigma = local_spread_deg(kappa);
    let var = sigma * sigma;
    let per_scenario: Vec<(String, f64, f64)> = moments
        .iter()
        .map(|m| (m.id.clone(), predict(var, m), m.target))
        .collect();
    let max_rel_error = per_scenario
        .iter()
        .map(|(_, p, t)| ((p - t) / t).abs())
        .fold(0.0, f64::max);
    Ok(CalibrationOutcome {
        kappa,
        local_sigma_deg: sigma,
        max_rel_error,
        per_scenario,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tdl::{scenario_by_id, scenario_catalog};
    use approx::assert_relative_eq;

    fn quick_cfg(scenario: &str, profile: ProfileId, tx: AntennaPattern) -> RunConfig {
        let mut cfg = RunConfig::new(scenario_by_id(scenario).unwrap(), profile, tx);
        cfg.n_per_component = 2_000;
        cfg.stderr_resamples = 10;
        cfg
    }

    #[test]
    fn point_run_is_deterministic_and_sane() {
        let cfg = quick_cfg("Sc5", ProfileId::TdlA, AntennaPattern::narrow_beam(180.0));
        let a = run_point(&cfg).unwrap();
        let b = run_point(&cfg).unwrap();
        assert_eq!(a.reception.sigma_deg.to_bits(), b.reception.sigma_deg.to_bits());
        assert!(a.reception.sigma_deg > 0.0 && a.reception.sigma_deg < 180.0);
        assert!(a.reception_stderr_deg.unwrap() > 0.0);
        assert!(a.rx_output.is_none());
    }

    #[test]
    fn directional_rx_reports_output_spread() {
        let mut cfg = quick_cfg("Sc5", ProfileId::TdlA, AntennaPattern::wide_beam(180.0));
        cfg.rx = AntennaPattern::wide_beam(0.0);
        let r = run_point(&cfg).unwrap();
        let out = r.rx_output.unwrap();
        assert!(out.sigma_deg > 0.0);
        assert!(r.rx_output_stderr_deg.unwrap() >= 0.0);
        assert!(r.reception_stderr_deg.is_none());
    }

    #[test]
    fn too_few_samples_rejected() {
        let mut cfg = quick_cfg("Sc1", ProfileId::TdlA, AntennaPattern::omni());
        cfg.n_per_component = 10;
        assert!(run_point(&cfg).is_err());
    }

    #[test]
    fn ds_sweep_shares_randomness() {
        // With common random numbers the spread responds monotonically to
        // the delay spread even at modest sample counts.
        let mut cfg = quick_cfg("Sc7", ProfileId::TdlA, AntennaPattern::wide_beam(180.0));
        cfg.n_per_component = 5_000;
        cfg.stderr_resamples = 0;
        let points = sweep_ds(&cfg, &[78.0, 249.0, 786.0]).unwrap();
        let sigmas: Vec<f64> = points
            .iter()
            .map(|(_, r)| r.reception.sigma_deg)
            .collect();
        assert!(sigmas[0] < sigmas[1] && sigmas[1] < sigmas[2], "{sigmas:?}");
    }

    #[test]
    fn alpha_sweep_uses_independent_streams() {
        let mut cfg = quick_cfg("Sc5", ProfileId::TdlA, AntennaPattern::narrow_beam(0.0));
        cfg.stderr_resamples = 0;
        let points = sweep_alpha_t(&cfg, &[0.0, 90.0, 180.0]).unwrap();
        assert_eq!(points.len(), 3);
        for (alpha, r) in &points {
            assert!(r.reception.sigma_deg > 0.0, "alpha={alpha}");
        }
    }

    #[test]
    fn table_covers_the_grid() {
        let local = LocalScatterConfig::default();
        let records = scenario_table(
            TableKind::Reception,
            &BeamPreset::BOTH,
            &local,
            MIN_SAMPLES,
            7,
            0,
        )
        .unwrap();
        assert_eq!(records.len(), scenario_catalog().len() * 2 * 2);
        assert!(records.iter().all(|r| r.as_rx_output_deg.is_none()));
        assert!(records.iter().all(|r| r.alpha_t_deg == 180.0));
        let rx = scenario_table(
            TableKind::RxOutput,
            &[BeamPreset::Narrow],
            &local,
            MIN_SAMPLES,
            7,
            0,
        )
        .unwrap();
        assert_eq!(rx.len(), 22);
        assert!(rx.iter().all(|r| r.as_rx_output_deg.is_some()));
        assert!(rx.iter().all(|r| r.rx_kind == "nba" && r.alpha_r_deg == 0.0));
    }

    #[test]
    fn record_serialization_is_stable() {
        let rec = OutputRecord {
            scenario: "Sc5".into(),
            environment: "umi-street-canyon".into(),
            tdl: "TDL-A".into(),
            ds_ns: 61.0,
            distance_m: 100.0,
            tx_kind: "nba".into(),
            tx_hpbw_deg: 7.8,
            alpha_t_deg: 180.0,
            rx_kind: "omni".into(),
            alpha_r_deg: 0.0,
            as_reception_deg: 12.345678,
            as_rx_output_deg: None,
            mc_stderr_deg: 0.0456789,
            seed: 42,
        };
        assert_eq!(
            rec.csv_line(),
            "Sc5,umi-street-canyon,TDL-A,61,100,nba,7.8,180,omni,0,12.3457,,0.0457,42"
        );
        let json = rec.jsonl_line();
        assert!(json.contains("\"as_rx_output_deg\":null"), "{json}");
        assert!(json.starts_with("{\"scenario\":\"Sc5\""), "{json}");
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0:180:5").unwrap().len(), 37);
        assert_eq!(parse_grid("0:180:5").unwrap()[36], 180.0);
        assert_eq!(parse_grid("-90:90:45").unwrap(), vec![-90.0, -45.0, 0.0, 45.0, 90.0]);
        assert_eq!(parse_grid("10:11:0.5").unwrap(), vec![10.0, 10.5, 11.0]);
        assert!(parse_grid("0:180").is_err());
        assert!(parse_grid("0:180:0").is_err());
        assert!(parse_grid("180:0:5").is_err());
        assert!(parse_grid("a:b:c").is_err());
    }

    #[test]
    fn local_spread_anchors() {
        assert_relative_eq!(local_spread_deg(0.0), 103.92, epsilon = 0.02);
        assert_relative_eq!(local_spread_deg(50.0), 8.10, epsilon = 0.05);
        assert!(local_spread_deg(1e6) < 0.1);
        // Monotone decreasing in concentration.
        assert!(local_spread_deg(1.0) > local_spread_deg(2.0));
        assert!(local_spread_deg(2.0) > local_spread_deg(10.0));
    }

    #[test]
    fn bootstrap_reports_positive_error() {
        let cfg = quick_cfg("Sc5", ProfileId::TdlB, AntennaPattern::wide_beam(180.0));
        let pas = compose_point(&cfg, 0).unwrap();
        let seeder = StreamSeeder::new(cfg.base_seed, 0);
        let se = bootstrap_stderr(&pas, &seeder, CHANNEL_BOOTSTRAP, 30);
        assert!(se > 0.0 && se < 20.0, "stderr {se}");
        let se2 = bootstrap_stderr(&pas, &seeder, CHANNEL_BOOTSTRAP, 30);
        assert_eq!(se.to_bits(), se2.to_bits());
    }

    #[test]
    fn calibration_smoke() {
        let targets: Vec<(Scenario, f64)> = [
            ("Sc1", 16.9),
            ("Sc5", 21.1),
            ("Sc9", 24.9),
        ]
        .iter()
        .map(|(id, t)| (scenario_by_id(id).unwrap(), *t))
        .collect();
        let out = calibrate_local_kappa(
            ProfileId::TdlB,
            BeamPreset::Narrow,
            &targets,
            5_000,
            1,
        )
        .unwrap();
        assert!(out.kappa > 0.01 && out.kappa < 1000.0);
        assert_eq!(out.per_scenario.len(), 3);
        assert!(out.max_rel_error < 1.0, "rel err {}", out.max_rel_error);
    }
}
