//! Command-line interface of the `mpm-sim` binary.
//!
//! Subcommands mirror the library drivers:
//!
//! * `run` - one simulation point, one output record;
//! * `sweep-alpha` - sweep the transmit boresight over a grid;
//! * `sweep-ds` - sweep the delay spread over a list;
//! * `table` - the full scenario grid (11 scenarios x 2 profiles x 2
//!   beams) at `alpha_t = 180`, either the reception spread or the
//!   Rx-filtered spread;
//! * `plotdata` - two-column text files ready for plotting.
//!
//! Records serialize as CSV (default) or JSON lines. A `--config` file
//! with `key = value` lines (keys named after the long flags) supplies
//! defaults; explicit flags win. Exit codes: 0 success, 1 runtime error,
//! 2 usage error.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::antenna::AntennaPattern;
use crate::error::{Error, Result};
use crate::pas::{LocalScatterConfig, LosConfig};
use crate::runner::{
    self, parse_grid, run_point, scenario_table, sweep_alpha_t, sweep_ds, BeamPreset,
    OutputRecord, RunConfig, RunResult, TableKind, DEFAULT_BOOTSTRAP_RESAMPLES,
    DEFAULT_SAMPLES, DEFAULT_SEED,
};
use crate::tdl::{scenario_by_id, scenario_catalog, Environment, ProfileId, Scenario};

#[derive(Parser, Debug)]
#[command(
    name = "mpm-sim",
    version,
    about = "Angle-spread simulator for multipath channels with directional antennas"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate one configuration and emit a single record.
    Run(RunArgs),
    /// Sweep the transmit boresight over an angle grid.
    SweepAlpha(SweepAlphaArgs),
    /// Sweep the rms delay spread over a list of values.
    SweepDs(SweepDsArgs),
    /// Run the full scenario grid at alpha_t = 180 deg.
    Table(TableArgs),
    /// Emit two-column plot files for standard figure layouts.
    Plotdata(PlotdataArgs),
}

/// Model parameters shared by the point and sweep subcommands.
#[derive(Args, Debug, Default, Clone)]
struct ModelOpts {
    /// Scenario id, Sc1..Sc11.
    #[arg(long)]
    scenario: Option<String>,
    /// Delay profile: TDL-A or TDL-B.
    #[arg(long)]
    tdl: Option<String>,
    /// Transmit pattern: omni | nba | wba | gaussian.
    #[arg(long)]
    tx: Option<String>,
    /// Half-power beam width for a custom Gaussian transmit beam, deg.
    #[arg(long = "tx-hpbw")]
    tx_hpbw: Option<f64>,
    /// Transmit boresight angle alpha_t, deg (default 180).
    #[arg(long = "alpha-t")]
    alpha_t: Option<f64>,
    /// Receive pattern: omni | nba | wba | gaussian (default omni).
    #[arg(long)]
    rx: Option<String>,
    /// Half-power beam width for a custom Gaussian receive beam, deg.
    #[arg(long = "rx-hpbw")]
    rx_hpbw: Option<f64>,
    /// Receive boresight angle alpha_r, deg (default 0).
    #[arg(long = "alpha-r")]
    alpha_r: Option<f64>,
    /// Von Mises concentration of local scattering (default 50).
    #[arg(long)]
    kappa: Option<f64>,
    /// Mean direction of local scattering, deg (default 0).
    #[arg(long)]
    mu: Option<f64>,
    /// Rice factor: split the zero-delay tap into a LOS ray and local
    /// scattering.
    #[arg(long = "rice-k")]
    rice_k: Option<f64>,
    /// Arrival angle of the LOS ray, deg (default 0).
    #[arg(long = "los-angle")]
    los_angle: Option<f64>,
    /// Monte-Carlo samples per mixture component (default 200000).
    #[arg(long)]
    samples: Option<usize>,
    /// Base RNG seed (default 42).
    #[arg(long)]
    seed: Option<u64>,
    /// Delay-spread override in ns; `sweep-ds` takes a comma-separated
    /// list here.
    #[arg(long = "ds-ns")]
    ds_ns: Option<String>,
    /// Link-distance override in meters.
    #[arg(long = "distance-m")]
    distance_m: Option<f64>,
}

/// Output destination and format.
#[derive(Args, Debug, Default, Clone)]
struct OutputOpts {
    /// Output format: csv (default) or jsonl.
    #[arg(long)]
    format: Option<String>,
    /// Write records to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Config file with `key = value` defaults for any flag.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    model: ModelOpts,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args, Debug)]
struct SweepAlphaArgs {
    #[command(flatten)]
    model: ModelOpts,
    /// Boresight grid `start:end:step` in deg (default 0:180:5).
    #[arg(long)]
    grid: Option<String>,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args, Debug)]
struct SweepDsArgs {
    #[command(flatten)]
    model: ModelOpts,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Which table: reception or rx-output.
    #[arg(long)]
    which: Option<String>,
    /// Von Mises concentration of local scattering (default 50).
    #[arg(long)]
    kappa: Option<f64>,
    /// Mean direction of local scattering, deg (default 0).
    #[arg(long)]
    mu: Option<f64>,
    /// Monte-Carlo samples per mixture component (default 200000).
    #[arg(long)]
    samples: Option<usize>,
    /// Base RNG seed (default 42).
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args, Debug)]
struct PlotdataArgs {
    /// Curve family: alpha (spread vs boresight) or ds (spread vs delay
    /// spread).
    #[arg(long)]
    curves: Option<String>,
    /// Environment for `--curves alpha`: indoor-office | umi-street-canyon
    /// | uma | o2i.
    #[arg(long)]
    environment: Option<String>,
    /// Delay profile: TDL-A or TDL-B.
    #[arg(long)]
    tdl: Option<String>,
    /// Transmit pattern: omni | nba | wba | gaussian.
    #[arg(long)]
    tx: Option<String>,
    #[arg(long = "tx-hpbw")]
    tx_hpbw: Option<f64>,
    /// Receive pattern (default omni; a beam switches the y column to the
    /// Rx-filtered spread).
    #[arg(long)]
    rx: Option<String>,
    #[arg(long = "rx-hpbw")]
    rx_hpbw: Option<f64>,
    /// Receive boresight, deg (default 0).
    #[arg(long = "alpha-r")]
    alpha_r: Option<f64>,
    /// Angle grid for `--curves alpha` (default 0:180:5).
    #[arg(long)]
    grid: Option<String>,
    /// Delay-spread list in ns for `--curves ds` (default log-spaced
    /// 10..1000).
    #[arg(long = "ds-ns")]
    ds_ns: Option<String>,
    /// Output directory (default `plotdata`).
    #[arg(long)]
    outdir: Option<PathBuf>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Config file with `key = value` defaults for any flag.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run_cli() -> i32 {
    run_cli_from(std::env::args_os())
}

/// Testable entry point taking explicit arguments.
pub fn run_cli_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(Error::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::SweepAlpha(args) => cmd_sweep_alpha(args),
        Command::SweepDs(args) => cmd_sweep_ds(args),
        Command::Table(args) => cmd_table(args),
        Command::Plotdata(args) => cmd_plotdata(args),
    }
}

// ── config file handling ──────────────────────────────────────────────

const KNOWN_KEYS: &[&str] = &[
    "scenario", "tdl", "tx", "tx-hpbw", "alpha-t", "rx", "rx-hpbw", "alpha-r",
    "kappa", "mu", "rice-k", "los-angle", "samples", "seed", "ds-ns",
    "distance-m", "format", "output", "grid", "which", "curves",
    "environment", "outdir",
];

fn load_config(path: &Path) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::DataFormat {
            file: path.display().to_string(),
            line: lineno + 1,
            msg: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim().to_ascii_lowercase();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(Error::DataFormat {
                file: path.display().to_string(),
                line: lineno + 1,
                msg: format!("unknown config key `{key}`"),
            });
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn fill<T: std::str::FromStr>(
    slot: &mut Option<T>,
    map: &HashMap<String, String>,
    key: &str,
) -> Result<()>
where
    T::Err: std::fmt::Display,
{
    if slot.is_none() {
        if let Some(raw) = map.get(key) {
            *slot = Some(raw.parse().map_err(|e| {
                Error::Domain(format!("config key `{key}`: {e}"))
            })?);
        }
    }
    Ok(())
}

fn merge_model(m: &mut ModelOpts, map: &HashMap<String, String>) -> Result<()> {
    fill(&mut m.scenario, map, "scenario")?;
    fill(&mut m.tdl, map, "tdl")?;
    fill(&mut m.tx, map, "tx")?;
    fill(&mut m.tx_hpbw, map, "tx-hpbw")?;
    fill(&mut m.alpha_t, map, "alpha-t")?;
    fill(&mut m.rx, map, "rx")?;
    fill(&mut m.rx_hpbw, map, "rx-hpbw")?;
    fill(&mut m.alpha_r, map, "alpha-r")?;
    fill(&mut m.kappa, map, "kappa")?;
    fill(&mut m.mu, map, "mu")?;
    fill(&mut m.rice_k, map, "rice-k")?;
    fill(&mut m.los_angle, map, "los-angle")?;
    fill(&mut m.samples, map, "samples")?;
    fill(&mut m.seed, map, "seed")?;
    fill(&mut m.ds_ns, map, "ds-ns")?;
    fill(&mut m.distance_m, map, "distance-m")?;
    Ok(())
}

fn merge_output(o: &mut OutputOpts, map: &HashMap<String, String>) -> Result<()> {
    fill(&mut o.format, map, "format")?;
    fill(&mut o.output, map, "output")?;
    Ok(())
}

fn config_map(path: &Option<PathBuf>) -> Result<HashMap<String, String>> {
    match path {
        Some(p) => load_config(p),
        None => Ok(HashMap::new()),
    }
}

// ── option resolution ─────────────────────────────────────────────────

fn require<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::Usage(format!("missing required option --{flag}")))
}

fn parse_pattern(
    kind: &str,
    hpbw: Option<f64>,
    boresight_deg: f64,
    side: &str,
) -> Result<AntennaPattern> {
    match kind.trim().to_ascii_lowercase().as_str() {
        "omni" => Ok(AntennaPattern::omni()),
        "nba" | "narrow" => Ok(AntennaPattern::narrow_beam(boresight_deg)),
        "wba" | "wide" => Ok(AntennaPattern::wide_beam(boresight_deg)),
        "gaussian" | "custom" => {
            let width = hpbw.ok_or_else(|| {
                Error::Usage(format!("--{side}-hpbw is required for a gaussian {side} pattern"))
            })?;
            AntennaPattern::gaussian(width, 0.0, boresight_deg)
        }
        other => Err(Error::Unknown {
            what: "antenna pattern",
            name: other.to_string(),
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Csv,
    Jsonl,
}

fn parse_format(s: Option<&str>) -> Result<OutputFormat> {
    match s.map(|f| f.trim().to_ascii_lowercase()) {
        None => Ok(OutputFormat::Csv),
        Some(f) if f == "csv" => Ok(OutputFormat::Csv),
        Some(f) if f == "jsonl" || f == "ndjson" || f == "json-lines" => Ok(OutputFormat::Jsonl),
        Some(f) => Err(Error::Unknown {
            what: "output format",
            name: f,
        }),
    }
}

fn parse_ds_list(spec: &str) -> Result<Vec<f64>> {
    let values: Vec<f64> = spec
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| Error::Domain(format!("bad delay spread `{p}`: {e}")))
        })
        .collect::<Result<_>>()?;
    if values.is_empty() {
        return Err(Error::Domain("empty delay-spread list".to_string()));
    }
    Ok(values)
}

/// Everything needed to build `RunConfig`s from resolved options.
#[derive(Debug)]
struct ResolvedModel {
    scenario: Scenario,
    profile_id: ProfileId,
    tx: AntennaPattern,
    rx: AntennaPattern,
    local: LocalScatterConfig,
    los: Option<LosConfig>,
    samples: usize,
    seed: u64,
    /// Raw ds override text (scalar or list, context dependent).
    ds_override: Option<String>,
}

fn resolve_model(m: &ModelOpts) -> Result<ResolvedModel> {
    let scenario_id = require(m.scenario.clone(), "scenario")?;
    let mut scenario = scenario_by_id(&scenario_id)?;
    if let Some(d) = m.distance_m {
        scenario.distance_m = d;
    }
    let profile_id: ProfileId = require(m.tdl.clone(), "tdl")?.parse()?;
    let alpha_t = m.alpha_t.unwrap_or(180.0);
    let tx_kind = require(m.tx.clone(), "tx")?;
    let tx = parse_pattern(&tx_kind, m.tx_hpbw, alpha_t, "tx")?;
    let alpha_r = m.alpha_r.unwrap_or(0.0);
    let rx = match &m.rx {
        Some(kind) => parse_pattern(kind, m.rx_hpbw, alpha_r, "rx")?,
        None => AntennaPattern::omni(),
    };
    let local = LocalScatterConfig {
        kappa: m.kappa.unwrap_or(50.0),
        mean_deg: m.mu.unwrap_or(0.0),
    };
    let los = m.rice_k.map(|k| LosConfig {
        rice_k: k,
        angle_deg: m.los_angle.unwrap_or(0.0),
    });
    Ok(ResolvedModel {
        scenario,
        profile_id,
        tx,
        rx,
        local,
        los,
        samples: m.samples.unwrap_or(DEFAULT_SAMPLES),
        seed: m.seed.unwrap_or(DEFAULT_SEED),
        ds_override: m.ds_ns.clone(),
    })
}

impl ResolvedModel {
    fn run_config(&self) -> RunConfig {
        RunConfig {
            scenario: self.scenario,
            profile_id: self.profile_id,
            tx: self.tx,
            rx: self.rx,
            local: self.local,
            los: self.los,
            n_per_component: self.samples,
            base_seed: self.seed,
            stderr_resamples: DEFAULT_BOOTSTRAP_RESAMPLES,
        }
    }
}

fn emit(records: &[OutputRecord], format: OutputFormat, output: &Option<PathBuf>) -> Result<()> {
    let mut buf: Vec<u8> = Vec::new();
    match format {
        OutputFormat::Csv => runner::write_records_csv(&mut buf, records)?,
        OutputFormat::Jsonl => runner::write_records_jsonl(&mut buf, records)?,
    }
    match output {
        Some(path) => std::fs::write(path, buf)?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(())
}

// ── subcommands ───────────────────────────────────────────────────────

fn cmd_run(mut args: RunArgs) -> Result<()> {
    let map = config_map(&args.out.config)?;
    merge_model(&mut args.model, &map)?;
    merge_output(&mut args.out, &map)?;
    let mut resolved = resolve_model(&args.model)?;
    if let Some(ds) = &resolved.ds_override {
        let ds: f64 = ds
            .trim()
            .parse()
            .map_err(|e| Error::Domain(format!("bad --ds-ns value `{ds}`: {e}")))?;
        resolved.scenario.ds_ns = ds;
    }
    let cfg = resolved.run_config();
    let result = run_point(&cfg)?;
    let record = OutputRecord::from_run(&cfg, &result);
    emit(
        &[record],
        parse_format(args.out.format.as_deref())?,
        &args.out.output,
    )
}

fn cmd_sweep_alpha(mut args: SweepAlphaArgs) -> Result<()> {
    let map = config_map(&args.out.config)?;
    merge_model(&mut args.model, &map)?;
    merge_output(&mut args.out, &map)?;
    fill(&mut args.grid, &map, "grid")?;
    let resolved = resolve_model(&args.model)?;
    if resolved.ds_override.is_some() {
        return Err(Error::Usage(
            "--ds-ns is not accepted by sweep-alpha; pick a scenario".to_string(),
        ));
    }
    let grid = parse_grid(args.grid.as_deref().unwrap_or("0:180:5"))?;
    let cfg = resolved.run_config();
    let points = sweep_alpha_t(&cfg, &grid)?;
    let records = sweep_records(&cfg, &points, |cfg, alpha| {
        cfg.tx = cfg.tx.pointed_at(*alpha);
    });
    emit(
        &records,
        parse_format(args.out.format.as_deref())?,
        &args.out.output,
    )
}

fn cmd_sweep_ds(mut args: SweepDsArgs) -> Result<()> {
    let map = config_map(&args.out.config)?;
    merge_model(&mut args.model, &map)?;
    merge_output(&mut args.out, &map)?;
    let resolved = resolve_model(&args.model)?;
    let ds_spec = resolved
        .ds_override
        .clone()
        .ok_or_else(|| Error::Usage("sweep-ds requires --ds-ns with a comma-separated list".to_string()))?;
    let ds_list = parse_ds_list(&ds_spec)?;
    let cfg = resolved.run_config();
    let points = sweep_ds(&cfg, &ds_list)?;
    let records = sweep_records(&cfg, &points, |cfg, ds| {
        cfg.scenario.ds_ns = *ds;
    });
    emit(
        &records,
        parse_format(args.out.format.as_deref())?,
        &args.out.output,
    )
}

fn sweep_records<F>(base: &RunConfig, points: &[(f64, RunResult)], apply: F) -> Vec<OutputRecord>
where
    F: Fn(&mut RunConfig, &f64),
{
    points
        .iter()
        .map(|(x, result)| {
            let mut cfg = base.clone();
            apply(&mut cfg, x);
            OutputRecord::from_run(&cfg, result)
        })
        .collect()
}

fn cmd_table(mut args: TableArgs) -> Result<()> {
    let map = config_map(&args.out.config)?;
    merge_output(&mut args.out, &map)?;
    fill(&mut args.which, &map, "which")?;
    fill(&mut args.kappa, &map, "kappa")?;
    fill(&mut args.mu, &map, "mu")?;
    fill(&mut args.samples, &map, "samples")?;
    fill(&mut args.seed, &map, "seed")?;
    let kind: TableKind = require(args.which, "which")?.parse()?;
    let local = LocalScatterConfig {
        kappa: args.kappa.unwrap_or(50.0),
        mean_deg: args.mu.unwrap_or(0.0),
    };
    let records = scenario_table(
        kind,
        &BeamPreset::BOTH,
        &local,
        args.samples.unwrap_or(DEFAULT_SAMPLES),
        args.seed.unwrap_or(DEFAULT_SEED),
        DEFAULT_BOOTSTRAP_RESAMPLES,
    )?;
    emit(
        &records,
        parse_format(args.out.format.as_deref())?,
        &args.out.output,
    )
}

const DEFAULT_DS_CURVE_NS: [f64; 11] = [
    10.0, 16.0, 25.0, 40.0, 63.0, 100.0, 160.0, 250.0, 400.0, 630.0, 1000.0,
];

fn cmd_plotdata(mut args: PlotdataArgs) -> Result<()> {
    let map = config_map(&args.config)?;
    fill(&mut args.curves, &map, "curves")?;
    fill(&mut args.environment, &map, "environment")?;
    fill(&mut args.tdl, &map, "tdl")?;
    fill(&mut args.tx, &map, "tx")?;
    fill(&mut args.tx_hpbw, &map, "tx-hpbw")?;
    fill(&mut args.rx, &map, "rx")?;
    fill(&mut args.rx_hpbw, &map, "rx-hpbw")?;
    fill(&mut args.alpha_r, &map, "alpha-r")?;
    fill(&mut args.grid, &map, "grid")?;
    fill(&mut args.ds_ns, &map, "ds-ns")?;
    fill(&mut args.outdir, &map, "outdir")?;
    fill(&mut args.kappa, &map, "kappa")?;
    fill(&mut args.mu, &map, "mu")?;
    fill(&mut args.samples, &map, "samples")?;
    fill(&mut args.seed, &map, "seed")?;

    let curves = require(args.curves, "curves")?.trim().to_ascii_lowercase();
    let profile_id: ProfileId = require(args.tdl, "tdl")?.parse()?;
    let tx_kind = require(args.tx, "tx")?;
    let tx = parse_pattern(&tx_kind, args.tx_hpbw, 180.0, "tx")?;
    let alpha_r = args.alpha_r.unwrap_or(0.0);
    let rx = match &args.rx {
        Some(kind) => parse_pattern(kind, args.rx_hpbw, alpha_r, "rx")?,
        None => AntennaPattern::omni(),
    };
    let local = LocalScatterConfig {
        kappa: args.kappa.unwrap_or(50.0),
        mean_deg: args.mu.unwrap_or(0.0),
    };
    let samples = args.samples.unwrap_or(DEFAULT_SAMPLES);
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let outdir = args.outdir.unwrap_or_else(|| PathBuf::from("plotdata"));
    std::fs::create_dir_all(&outdir)?;

    let tdl_tag = profile_id.name().to_ascii_lowercase();
    let spread_of = |r: &RunResult| match r.rx_output {
        Some(out) => out.sigma_deg,
        None => r.reception.sigma_deg,
    };
    let y_name = if rx.kind == crate::antenna::PatternKind::Omni {
        "as_reception_deg"
    } else {
        "as_rx_output_deg"
    };

    match curves.as_str() {
        "alpha" => {
            let env: Environment = require(args.environment, "environment")?.parse()?;
            let grid = parse_grid(args.grid.as_deref().unwrap_or("0:180:5"))?;
            for scenario in scenario_catalog().iter().filter(|s| s.environment == env) {
                let cfg = RunConfig {
                    rx,
                    local,
                    n_per_component: samples,
                    base_seed: seed,
                    stderr_resamples: 0,
                    ..RunConfig::new(*scenario, profile_id, tx)
                };
                let points = sweep_alpha_t(&cfg, &grid)?;
                let path = outdir.join(format!(
                    "as_vs_alpha_{}_{}_{}_{}.txt",
                    env.id(),
                    scenario.id.to_ascii_lowercase(),
                    tdl_tag,
                    tx.label()
                ));
                let mut text = format!("# alpha_t_deg {y_name}\n");
                for (alpha, r) in &points {
                    text.push_str(&format!("{alpha} {:.4}\n", spread_of(r)));
                }
                std::fs::write(&path, text)?;
                println!("wrote {}", path.display());
            }
        }
        "ds" => {
            let ds_list = match &args.ds_ns {
                Some(spec) => parse_ds_list(spec)?,
                None => DEFAULT_DS_CURVE_NS.to_vec(),
            };
            for env in Environment::ALL {
                let scenario = *scenario_catalog()
                    .iter()
                    .find(|s| s.environment == env)
                    .expect("every environment has a scenario");
                let cfg = RunConfig {
                    rx,
                    local,
                    n_per_component: samples,
                    base_seed: seed,
                    stderr_resamples: 0,
                    ..RunConfig::new(scenario, profile_id, tx)
                };
                let points = sweep_ds(&cfg, &ds_list)?;
                let path = outdir.join(format!(
                    "as_vs_ds_{}_{}_{}.txt",
                    env.id(),
                    tdl_tag,
                    tx.label()
                ));
                let mut text = format!("# ds_ns {y_name}\n");
                for (ds, r) in &points {
                    text.push_str(&format!("{ds} {:.4}\n", spread_of(r)));
                }
                std::fs::write(&path, text)?;
                println!("wrote {}", path.display());
            }
        }
        other => {
            return Err(Error::Unknown {
                what: "curve family",
                name: other.to_string(),
            })
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_parsing() {
        assert_eq!(parse_pattern("omni", None, 0.0, "tx").unwrap().label(), "omni");
        assert_eq!(parse_pattern("nba", None, 180.0, "tx").unwrap().label(), "nba");
        assert_eq!(parse_pattern("WBA", None, 0.0, "rx").unwrap().label(), "wba");
        let custom = parse_pattern("gaussian", Some(30.0), 10.0, "tx").unwrap();
        assert_eq!(custom.hpbw_deg, 30.0);
        assert!(parse_pattern("gaussian", None, 0.0, "tx").is_err());
        assert!(parse_pattern("horn", None, 0.0, "tx").is_err());
    }

    #[test]
    fn format_parsing() {
        assert_eq!(parse_format(None).unwrap(), OutputFormat::Csv);
        assert_eq!(parse_format(Some("jsonl")).unwrap(), OutputFormat::Jsonl);
        assert!(parse_format(Some("xml")).is_err());
    }

    #[test]
    fn ds_list_parsing() {
        assert_eq!(parse_ds_list("78, 249,786").unwrap(), vec![78.0, 249.0, 786.0]);
        assert!(parse_ds_list("78,abc").is_err());
    }

    #[test]
    fn config_file_round_trip() {
        let dir = std::env::temp_dir().join(format!("mpm-sim-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("sim.conf");
        std::fs::write(&path, "# base settings\nscenario = Sc5\ntdl = TDL-A\nsamples = 5000\n").unwrap();
        let map = load_config(&path).unwrap();
        assert_eq!(map.get("scenario").map(String::as_str), Some("Sc5"));
        let mut model = ModelOpts {
            scenario: Some("Sc9".to_string()), // explicit flag wins
            ..ModelOpts::default()
        };
        merge_model(&mut model, &map).unwrap();
        assert_eq!(model.scenario.as_deref(), Some("Sc9"));
        assert_eq!(model.tdl.as_deref(), Some("TDL-A"));
        assert_eq!(model.samples, Some(5000));
        std::fs::write(&path, "bogus-key = 1\n").unwrap();
        assert!(load_config(&path).is_err());
        std::fs::write(&path, "no equals sign\n").unwrap();
        assert!(load_config(&path).is_err());
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn missing_required_is_usage_error() {
        let model = ModelOpts::default();
        match resolve_model(&model) {
            Err(Error::Usage(msg)) => assert!(msg.contains("--scenario"), "{msg}"),
            other => panic!("expected usage error, got {other:?}"),
        }
    }
}
