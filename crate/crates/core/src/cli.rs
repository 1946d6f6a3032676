//! Command-line front end. Every command writes one CSV whose first line is
//! `# ` followed by a JSON manifest; feeding that file back through
//! `--config` reproduces it byte for byte.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::density::{density_grid, PlaneGridSpec, DEFAULT_EXTENT};
use crate::dirac_coulomb::PhysicalConstants;
use crate::error::{Error, Result};
use crate::packet::{EnergyBranch, PacketSpec, PacketTables, TableOptions, TimeScales, TimeUnit, DEFAULT_SIGMA};

pub const TOOL: &str = "dirac-wp";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

const NATURAL_UNITS: &str =
    "hbar = m_e = c = 1; time in hbar/(m_e c^2), length in hbar/(m_e c), energy in m_e c^2";

/// Inclusive integer range written `a` or `a:b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: u32,
    pub hi: u32,
}

impl IntRange {
    pub fn single(v: u32) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn is_single(&self) -> bool {
        self.lo == self.hi
    }

    fn only(&self, name: &str) -> Result<u32> {
        if self.is_single() {
            Ok(self.lo)
        } else {
            Err(Error::Config(format!("{name} must be a single value for this command, got {self}")))
        }
    }

    fn iter(&self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}:{}", self.lo, self.hi)
        }
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |p: &str| p.trim().parse::<u32>().map_err(|e| format!("bad integer '{p}': {e}"));
        let r = match s.split_once(':') {
            Some((lo, hi)) => Self { lo: parse(lo)?, hi: parse(hi)? },
            None => Self::single(parse(s)?),
        };
        if r.lo > r.hi {
            return Err(format!("empty range {s}"));
        }
        Ok(r)
    }
}

impl Serialize for IntRange {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_single() {
            s.serialize_u32(self.lo)
        } else {
            s.serialize_str(&self.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for IntRange {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Self::single(v)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = TOOL, version, about = "Dirac-Coulomb circular wave packets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Timescales,
    Autocorr,
    Spin,
    Density,
    Smallnorm,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic times T(k) and T_ls, optionally swept over Z and N.
    Timescales(RunArgs),
    /// |A(t)|² over a time range.
    Autocorr(RunArgs),
    /// Mean spin vector over a time range.
    Spin(RunArgs),
    /// Spin-resolved density on the orbit plane at one time.
    Density(RunArgs),
    /// Small-component weight swept over Z and N.
    Smallnorm(RunArgs),
}

impl Command {
    pub fn kind(&self) -> CommandKind {
        match self {
            Command::Timescales(_) => CommandKind::Timescales,
            Command::Autocorr(_) => CommandKind::Autocorr,
            Command::Spin(_) => CommandKind::Spin,
            Command::Density(_) => CommandKind::Density,
            Command::Smallnorm(_) => CommandKind::Smallnorm,
        }
    }

    pub fn args(&self) -> &RunArgs {
        match self {
            Command::Timescales(a)
            | Command::Autocorr(a)
            | Command::Spin(a)
            | Command::Density(a)
            | Command::Smallnorm(a) => a,
        }
    }
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Timescales => "timescales",
            CommandKind::Autocorr => "autocorr",
            CommandKind::Spin => "spin",
            CommandKind::Density => "density",
            CommandKind::Smallnorm => "smallnorm",
        }
    }
}

/// Flags shared by all commands; unset flags fall back to `--config`, then
/// to built-in defaults.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunArgs {
    /// Nuclear charge, or an inclusive range `a:b` for sweeps.
    #[arg(long = "Z")]
    #[serde(rename = "Z", default)]
    pub z: Option<IntRange>,
    /// Mean principal number, or an inclusive range `a:b` for sweeps.
    #[arg(long = "N")]
    #[serde(rename = "N", default)]
    pub n: Option<IntRange>,
    /// Gaussian width σ_G of the weights in n.
    #[arg(long)]
    #[serde(default)]
    pub sigma: Option<f64>,
    /// Spin amplitude along +z.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub a: Option<f64>,
    /// Spin amplitude along -z.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default)]
    pub b: Option<f64>,
    /// Start of the time range, in `--unit`.
    #[arg(long)]
    #[serde(default)]
    pub tmin: Option<f64>,
    /// End of the time range, in `--unit`.
    #[arg(long)]
    #[serde(default)]
    pub tmax: Option<f64>,
    /// Number of time samples, endpoints included.
    #[arg(long)]
    #[serde(default)]
    pub samples: Option<usize>,
    #[arg(long, value_enum)]
    #[serde(default)]
    pub unit: Option<TimeUnit>,
    /// Density grid points per axis.
    #[arg(long)]
    #[serde(default)]
    pub grid: Option<usize>,
    /// Density grid half-width in units of r_N.
    #[arg(long)]
    #[serde(default)]
    pub extent: Option<f64>,
    /// Density snapshot time, in `--unit`.
    #[arg(long)]
    #[serde(default)]
    pub time: Option<f64>,
    /// Highest derivative order for `timescales`.
    #[arg(long)]
    #[serde(default)]
    pub kmax: Option<usize>,
    /// Drop the small Δl = 2 spin couplings.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no_delta: Option<bool>,
    /// Zero every small-component radial integral (diagnostic).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub large_only: Option<bool>,
    /// Output CSV; standard output when absent.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Flat JSON config, or a CSV written by this tool.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

/// Fully resolved parameters of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(rename = "Z")]
    pub z: IntRange,
    #[serde(rename = "N")]
    pub n: IntRange,
    pub sigma: f64,
    pub a: f64,
    pub b: f64,
    pub tmin: f64,
    pub tmax: f64,
    pub samples: usize,
    pub unit: TimeUnit,
    pub grid: usize,
    pub extent: f64,
    pub time: f64,
    pub kmax: usize,
    pub no_delta: bool,
    pub large_only: bool,
}

impl RunConfig {
    /// Flags first, then the config file, then defaults.
    pub fn resolve(flags: &RunArgs, file: &RunArgs) -> Result<Self> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let cfg = Self {
            z: flags.z.or(file.z).unwrap_or(IntRange::single(92)),
            n: flags.n.or(file.n).unwrap_or(IntRange::single(20)),
            sigma: flags.sigma.or(file.sigma).unwrap_or(DEFAULT_SIGMA),
            a: flags.a.or(file.a).unwrap_or(h),
            b: flags.b.or(file.b).unwrap_or(h),
            tmin: flags.tmin.or(file.tmin).unwrap_or(0.0),
            tmax: flags.tmax.or(file.tmax).unwrap_or(12.0),
            samples: flags.samples.or(file.samples).unwrap_or(2001),
            unit: flags.unit.or(file.unit).unwrap_or_default(),
            grid: flags.grid.or(file.grid).unwrap_or(256),
            extent: flags.extent.or(file.extent).unwrap_or(DEFAULT_EXTENT),
            time: flags.time.or(file.time).unwrap_or(0.0),
            kmax: flags.kmax.or(file.kmax).unwrap_or(4),
            no_delta: flags.no_delta.or(file.no_delta).unwrap_or(false),
            large_only: flags.large_only.or(file.large_only).unwrap_or(false),
        };
        if cfg.samples < 2 {
            return Err(Error::Config(format!("samples must be >= 2, got {}", cfg.samples)));
        }
        if !cfg.tmin.is_finite() || !cfg.tmax.is_finite() || cfg.tmax <= cfg.tmin {
            return Err(Error::Config(format!("need finite tmin < tmax, got [{}, {}]", cfg.tmin, cfg.tmax)));
        }
        if !cfg.time.is_finite() {
            return Err(Error::Config(format!("time must be finite, got {}", cfg.time)));
        }
        Ok(cfg)
    }

    fn packet(&self) -> Result<PacketSpec> {
        PacketSpec::new(self.z.only("Z")?, self.n.only("N")?, self.sigma, self.a, self.b)
    }

    fn table_options(&self) -> TableOptions {
        TableOptions { large_only: self.large_only, ..Default::default() }
    }

    fn time_grid(&self) -> Vec<f64> {
        let last = (self.samples - 1) as f64;
        (0..self.samples).map(|i| self.tmin + (self.tmax - self.tmin) * i as f64 / last).collect()
    }
}

/// Reads `--config`: flat JSON, or a CSV whose first line is `# {manifest}`.
pub fn read_config_file(path: &Path, kind: CommandKind) -> Result<RunArgs> {
    let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let trimmed = text.trim_start();
    let value: Value = if let Some(rest) = trimmed.strip_prefix('#') {
        let line = rest.lines().next().unwrap_or("");
        serde_json::from_str(line.trim())
    } else {
        serde_json::from_str(trimmed)
    }
    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let config = match value.get("tool") {
        Some(_) => {
            let cmd = value.get("command").and_then(Value::as_str).unwrap_or("");
            if cmd != kind.name() {
                return Err(Error::Config(format!(
                    "{} was written by '{cmd}', not '{}'",
                    path.display(),
                    kind.name()
                )));
            }
            value.get("config").cloned().unwrap_or(Value::Object(Map::new()))
        }
        None => value,
    };
    serde_json::from_value(config).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

fn manifest(kind: CommandKind, cfg: &RunConfig, consts: &PhysicalConstants, extra: Map<String, Value>) -> Result<String> {
    let mut m = Map::new();
    m.insert("tool".into(), json!(TOOL));
    m.insert("version".into(), json!(VERSION));
    m.insert("command".into(), json!(kind.name()));
    m.insert("alpha".into(), json!(consts.alpha));
    m.insert("compton_time_seconds".into(), json!(consts.compton_time_seconds));
    m.insert("natural_units".into(), json!(NATURAL_UNITS));
    m.insert("config".into(), serde_json::to_value(cfg).map_err(|e| Error::Config(e.to_string()))?);
    m.extend(extra);
    Ok(format!("# {}\n", Value::Object(m)))
}

/// Runs one command and returns the full CSV text.
pub fn render(kind: CommandKind, cfg: &RunConfig) -> Result<String> {
    let consts = PhysicalConstants::default();
    match kind {
        CommandKind::Timescales => timescales_csv(cfg, &consts),
        CommandKind::Autocorr => autocorr_csv(cfg, &consts),
        CommandKind::Spin => spin_csv(cfg, &consts),
        CommandKind::Density => density_csv(cfg, &consts),
        CommandKind::Smallnorm => smallnorm_csv(cfg, &consts),
    }
}

fn timescales_csv(cfg: &RunConfig, consts: &PhysicalConstants) -> Result<String> {
    let mut out = manifest(CommandKind::Timescales, cfg, consts, Map::new())?;
    out.push_str("Z,N,k,T_k_natural,T_k_over_T1,T_k_over_Tcl,T_k_seconds\n");
    for z in cfg.z.iter() {
        for n in cfg.n.iter() {
            let ts = TimeScales::new(consts, z, n, cfg.kmax, EnergyBranch::JPlus)?;
            let rows = ts.t.iter().enumerate().map(|(i, t)| ((i + 1).to_string(), *t)).chain([("ls".to_string(), ts.t_ls)]);
            for (k, t) in rows {
                out.push_str(&format!(
                    "{z},{n},{k},{},{},{},{}\n",
                    fmt_f(t),
                    fmt_f(t / ts.kepler()),
                    fmt_f(t / ts.t_cl),
                    fmt_f(ts.to_seconds(t))
                ));
            }
        }
    }
    Ok(out)
}

fn packet_setup(cfg: &RunConfig, consts: &PhysicalConstants) -> Result<(PacketTables, TimeScales)> {
    let spec = cfg.packet()?;
    let tables = PacketTables::build(&spec, cfg.table_options())?;
    let ts = TimeScales::new(consts, spec.z, spec.n_mean, 1, EnergyBranch::JPlus)?;
    Ok((tables, ts))
}

fn autocorr_csv(cfg: &RunConfig, consts: &PhysicalConstants) -> Result<String> {
    let (tables, ts) = packet_setup(cfg, consts)?;
    let times = cfg.time_grid();
    let rows: Vec<String> = times
        .par_iter()
        .map(|&tu| {
            let t = ts.from_unit(tu, cfg.unit);
            let a = tables.autocorrelation(t);
            format!("{},{},{},{},{}\n", fmt_f(tu), fmt_f(t), fmt_f(a.re), fmt_f(a.im), fmt_f(a.norm_sqr()))
        })
        .collect();
    let mut out = manifest(CommandKind::Autocorr, cfg, consts, Map::new())?;
    out.push_str("t_in_selected_unit,t_natural,re_A,im_A,abs_A_squared\n");
    out.extend(rows);
    Ok(out)
}

fn spin_csv(cfg: &RunConfig, consts: &PhysicalConstants) -> Result<String> {
    let (tables, ts) = packet_setup(cfg, consts)?;
    let times = cfg.time_grid();
    let rows: Vec<String> = times
        .par_iter()
        .map(|&tu| {
            let [x, y, z] = tables.spin_expect(ts.from_unit(tu, cfg.unit), !cfg.no_delta);
            let len = (x * x + y * y + z * z).sqrt();
            format!("{},{},{},{},{}\n", fmt_f(tu), fmt_f(x), fmt_f(y), fmt_f(z), fmt_f(len))
        })
        .collect();
    let mut out = manifest(CommandKind::Spin, cfg, consts, Map::new())?;
    out.push_str("t,sx,sy,sz,spin_length\n");
    out.extend(rows);
    Ok(out)
}

fn density_csv(cfg: &RunConfig, consts: &PhysicalConstants) -> Result<String> {
    let (tables, ts) = packet_setup(cfg, consts)?;
    let t = ts.from_unit(cfg.time, cfg.unit);
    let grid = PlaneGridSpec::new(cfg.extent, cfg.grid)?;
    let d = density_grid(&tables, grid, t)?;
    let mut extra = Map::new();
    let times: Map<String, Value> = [TimeUnit::Natural, TimeUnit::Kepler, TimeUnit::Tls, TimeUnit::Seconds]
        .iter()
        .map(|u| (u.as_str().to_string(), json!(ts.to_unit(t, *u))))
        .collect();
    extra.insert("time".into(), Value::Object(times));
    extra.insert("r_N_compton_lengths".into(), json!(d.r_n));
    let mut out = manifest(CommandKind::Density, cfg, consts, extra)?;
    out.push_str("x_over_rN,y_over_rN,rho_up,rho_down,rho_total\n");
    let n = grid.resolution;
    for iy in 0..n {
        let y = fmt_f(grid.coordinate(iy));
        for ix in 0..n {
            let i = iy * n + ix;
            out.push_str(&format!(
                "{},{y},{},{},{}\n",
                fmt_f(grid.coordinate(ix)),
                fmt_f(d.spin_up[i]),
                fmt_f(d.spin_down[i]),
                fmt_f(d.total(i))
            ));
        }
    }
    Ok(out)
}

fn smallnorm_csv(cfg: &RunConfig, consts: &PhysicalConstants) -> Result<String> {
    let pairs: Vec<(u32, u32)> = cfg.z.iter().flat_map(|z| cfg.n.iter().map(move |n| (z, n))).collect();
    let rows = pairs
        .par_iter()
        .map(|&(z, n)| {
            let spec = PacketSpec::new(z, n, cfg.sigma, cfg.a, cfg.b)?.with_constants(*consts)?;
            let (c3, c4, total) = PacketTables::build(&spec, cfg.table_options())?.small_norm();
            Ok(format!("{z},{n},{},{},{}\n", fmt_f(c3), fmt_f(c4), fmt_f(total)))
        })
        .collect::<Result<Vec<String>>>()?;
    let mut out = manifest(CommandKind::Smallnorm, cfg, consts, Map::new())?;
    out.push_str("Z,N,c3_norm,c4_norm,total\n");
    out.extend(rows);
    Ok(out)
}

/// Parses flags and the optional config file, runs the command and writes
/// the CSV to `--out` or `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    let kind = cli.command.kind();
    let flags = cli.command.args();
    let file = match &flags.config {
        Some(path) => read_config_file(path, kind)?,
        None => RunArgs::default(),
    };
    let cfg = RunConfig::resolve(flags, &file)?;
    let csv = render(kind, &cfg)?;
    match &flags.out {
        Some(path) => fs::write(path, csv)?,
        None => stdout.write_all(csv.as_bytes())?,
    }
    Ok(())
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli, &mut io::stdout().lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{TOOL}: error: {e}");
            1
        }
    }
}
