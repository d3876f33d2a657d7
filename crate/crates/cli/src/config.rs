//! Command-line flags, the optional JSON config file, and their resolution
//! into a validated [`RunConfig`]. Flags take precedence over the file.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use fluxon_core::dynamics::{ChainParams, QuenchParams, TeleportParams};
use fluxon_core::hamiltonians::{Dispersion, Orientation, MAX_CHAIN_FLUXONS};
use serde::Deserialize;

use crate::error::{usage, CliError};
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "fluxon",
    version,
    about = "Toroidal flux qubits coupled through a quantum ring"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy bands over a range of ring numbers m.
    Spectrum(SpectrumArgs),
    /// Bloch vectors of the single-fluxon eigenstates.
    Bloch(BlochArgs),
    /// Excitation transfer between two fluxons sharing a ring.
    Teleport(TeleportArgs),
    /// Entanglement growth after switching on an electron drive.
    Quench(QuenchArgs),
    /// Excitation transport along a fluxon chain.
    Chain(ChainArgs),
    /// Pauli coefficients of an effective Hamiltonian.
    Decompose(DecomposeArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON file with default values for any flag (snake_case keys).
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output file; defaults to `<command>.<format>`.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// csv or json; defaults from the --out extension.
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SpectrumArgs {
    /// single | two-fluxon | two-fluxon-physical
    #[arg(long)]
    pub system: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub m_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub m_max: Option<i64>,
    /// quadratic | linear
    #[arg(long)]
    pub dispersion: Option<String>,
    /// Orientation signs of the two fluxons, e.g. "1,-1".
    #[arg(long, allow_hyphen_values = true)]
    pub orientations: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct BlochArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub m_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub m_max: Option<i64>,
    #[arg(long)]
    pub dispersion: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct TeleportArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub dt: Option<f64>,
    /// Peak probability counted as a complete transfer.
    #[arg(long, allow_hyphen_values = true)]
    pub threshold: Option<f64>,
    #[arg(long)]
    pub dispersion: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct QuenchArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub dispersion: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ChainArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Ring number of each link, e.g. "0,1,-1".
    #[arg(long, allow_hyphen_values = true)]
    pub link_ms: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub excited_site: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub dispersion: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct DecomposeArgs {
    /// single | two-fluxon | two-fluxon-physical | driven | ising | chain
    #[arg(long)]
    pub system: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub g1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub g2: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub link_ms: Option<String>,
    #[arg(long)]
    pub dispersion: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub orientations: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Keys accepted in a `--config` file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub system: Option<String>,
    pub delta: Option<f64>,
    pub m: Option<i64>,
    pub m_min: Option<i64>,
    pub m_max: Option<i64>,
    pub dispersion: Option<String>,
    pub orientations: Option<Vec<i64>>,
    pub n: Option<usize>,
    pub link_ms: Option<Vec<i64>>,
    pub excited_site: Option<usize>,
    pub t_max: Option<f64>,
    pub dt: Option<f64>,
    pub threshold: Option<f64>,
    pub g: Option<f64>,
    pub g1: Option<f64>,
    pub g2: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| usage(format!("invalid config {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    Single,
    TwoFluxon,
    TwoFluxonPhysical,
    Driven,
    Ising,
    Chain,
}

impl SystemKind {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "single" => SystemKind::Single,
            "two-fluxon" => SystemKind::TwoFluxon,
            "two-fluxon-physical" => SystemKind::TwoFluxonPhysical,
            "driven" => SystemKind::Driven,
            "ising" => SystemKind::Ising,
            "chain" => SystemKind::Chain,
            other => return Err(usage(format!("unknown system '{other}'"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            SystemKind::Single => "single",
            SystemKind::TwoFluxon => "two-fluxon",
            SystemKind::TwoFluxonPhysical => "two-fluxon-physical",
            SystemKind::Driven => "driven",
            SystemKind::Ising => "ising",
            SystemKind::Chain => "chain",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumConfig {
    pub system: SystemKind,
    pub delta: f64,
    pub m_min: i64,
    pub m_max: i64,
    pub dispersion: Dispersion,
    pub orientations: [Orientation; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlochConfig {
    pub delta: f64,
    pub m_min: i64,
    pub m_max: i64,
    pub dispersion: Dispersion,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecomposeConfig {
    pub system: SystemKind,
    pub m: i64,
    pub delta: f64,
    pub g1: f64,
    pub g2: f64,
    pub link_ms: Vec<i64>,
    pub dispersion: Dispersion,
    pub orientations: [Orientation; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub enum Params {
    Spectrum(SpectrumConfig),
    Bloch(BlochConfig),
    Teleport(TeleportParams),
    Quench(QuenchParams),
    Chain(ChainParams),
    Decompose(DecomposeConfig),
}

impl Params {
    pub fn command(&self) -> &'static str {
        match self {
            Params::Spectrum(_) => "spectrum",
            Params::Bloch(_) => "bloch",
            Params::Teleport(_) => "teleport",
            Params::Quench(_) => "quench",
            Params::Chain(_) => "chain",
            Params::Decompose(_) => "decompose",
        }
    }
}

/// A fully resolved and validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: Params,
    pub out: PathBuf,
    pub format: Format,
}

fn parse_dispersion(s: Option<String>) -> Result<Dispersion, CliError> {
    s.map_or(Ok(Dispersion::Quadratic), |s| {
        s.parse()
            .map_err(|_| usage(format!("unknown dispersion '{s}'")))
    })
}

fn parse_int_list(s: &str) -> Result<Vec<i64>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            let x = x.trim();
            x.trim_start_matches('+')
                .parse()
                .map_err(|_| usage(format!("'{x}' is not an integer")))
        })
        .collect()
}

fn parse_orientations(
    flag: Option<String>,
    file: Option<Vec<i64>>,
) -> Result<[Orientation; 2], CliError> {
    let signs = match flag {
        Some(s) => parse_int_list(&s)?,
        None => file.unwrap_or_else(|| vec![1, -1]),
    };
    if signs.len() != 2 {
        return Err(usage(format!(
            "expected 2 orientation signs, got {}",
            signs.len()
        )));
    }
    Ok([
        Orientation::from_sign(signs[0])?,
        Orientation::from_sign(signs[1])?,
    ])
}

fn check_delta(delta: f64) -> Result<f64, CliError> {
    if delta.is_finite() && delta >= 0.0 {
        Ok(delta)
    } else {
        Err(usage(format!(
            "--delta must be finite and >= 0, got {delta}"
        )))
    }
}

fn check_positive(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(usage(format!("--{name} must be finite and > 0, got {x}")))
    }
}

fn check_finite(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(usage(format!("--{name} must be finite")))
    }
}

fn check_range(m_min: i64, m_max: i64) -> Result<(i64, i64), CliError> {
    if m_min > m_max {
        return Err(usage(format!("--m-min {m_min} exceeds --m-max {m_max}")));
    }
    if m_max - m_min > 100_000 {
        return Err(usage("m range too large (more than 100000 values)"));
    }
    Ok((m_min, m_max))
}

fn load(common: &CommonArgs) -> Result<ConfigFile, CliError> {
    common
        .config
        .as_deref()
        .map_or(Ok(ConfigFile::default()), ConfigFile::load)
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (params, common, file) = match cli.command {
            Command::Spectrum(a) => {
                let f = load(&a.common)?;
                let system = SystemKind::parse(
                    &a.system
                        .or(f.system.clone())
                        .unwrap_or_else(|| "single".into()),
                )?;
                let default_delta = if system == SystemKind::Single {
                    5.0
                } else {
                    3.0
                };
                if !matches!(
                    system,
                    SystemKind::Single | SystemKind::TwoFluxon | SystemKind::TwoFluxonPhysical
                ) {
                    return Err(usage(format!(
                        "spectrum does not support system '{}'",
                        system.name()
                    )));
                }
                let (m_min, m_max) = check_range(
                    a.m_min.or(f.m_min).unwrap_or(-7),
                    a.m_max.or(f.m_max).unwrap_or(8),
                )?;
                let p = SpectrumConfig {
                    system,
                    delta: check_delta(a.delta.or(f.delta).unwrap_or(default_delta))?,
                    m_min,
                    m_max,
                    dispersion: parse_dispersion(a.dispersion.or(f.dispersion.clone()))?,
                    orientations: parse_orientations(a.orientations, f.orientations.clone())?,
                };
                (Params::Spectrum(p), a.common, f)
            }
            Command::Bloch(a) => {
                let f = load(&a.common)?;
                let (m_min, m_max) = check_range(
                    a.m_min.or(f.m_min).unwrap_or(-7),
                    a.m_max.or(f.m_max).unwrap_or(8),
                )?;
                let p = BlochConfig {
                    delta: check_delta(a.delta.or(f.delta).unwrap_or(5.0))?,
                    m_min,
                    m_max,
                    dispersion: parse_dispersion(a.dispersion.or(f.dispersion.clone()))?,
                };
                (Params::Bloch(p), a.common, f)
            }
            Command::Teleport(a) => {
                let f = load(&a.common)?;
                let d = TeleportParams::default();
                let p = TeleportParams {
                    delta: check_delta(a.delta.or(f.delta).unwrap_or(d.delta))?,
                    m: a.m.or(f.m).unwrap_or(d.m),
                    t_max: check_positive("t-max", a.t_max.or(f.t_max).unwrap_or(d.t_max))?,
                    dt: check_positive("dt", a.dt.or(f.dt).unwrap_or(d.dt))?,
                    transfer_threshold: check_finite(
                        "threshold",
                        a.threshold.or(f.threshold).unwrap_or(d.transfer_threshold),
                    )?,
                    dispersion: parse_dispersion(a.dispersion.or(f.dispersion.clone()))?,
                };
                (Params::Teleport(p), a.common, f)
            }
            Command::Quench(a) => {
                let f = load(&a.common)?;
                let d = QuenchParams::default();
                let p = QuenchParams {
                    delta: check_delta(a.delta.or(f.delta).unwrap_or(d.delta))?,
                    g: check_finite("g", a.g.or(f.g).unwrap_or(d.g))?,
                    t_max: check_positive("t-max", a.t_max.or(f.t_max).unwrap_or(d.t_max))?,
                    dt: check_positive("dt", a.dt.or(f.dt).unwrap_or(d.dt))?,
                    dispersion: parse_dispersion(a.dispersion.or(f.dispersion.clone()))?,
                };
                (Params::Quench(p), a.common, f)
            }
            Command::Chain(a) => {
                let f = load(&a.common)?;
                let link_ms = match a.link_ms {
                    Some(s) => Some(parse_int_list(&s)?),
                    None => f.link_ms.clone(),
                };
                let n =
                    a.n.or(f.n)
                        .unwrap_or_else(|| link_ms.as_ref().map_or(4, |l| l.len() + 1));
                if !(2..=MAX_CHAIN_FLUXONS).contains(&n) {
                    return Err(usage(format!(
                        "--n must be in 2..={MAX_CHAIN_FLUXONS}, got {n}"
                    )));
                }
                let link_ms = link_ms.unwrap_or_else(|| vec![0; n - 1]);
                if link_ms.len() + 1 != n {
                    return Err(usage(format!(
                        "--link-ms has {} entries, expected {} for n = {n}",
                        link_ms.len(),
                        n - 1
                    )));
                }
                let excited_site = a.excited_site.or(f.excited_site).unwrap_or(0);
                if excited_site >= n {
                    return Err(usage(format!(
                        "--excited-site {excited_site} out of range for n = {n}"
                    )));
                }
                let p = ChainParams {
                    n,
                    link_ms,
                    delta: check_delta(a.delta.or(f.delta).unwrap_or(1.0))?,
                    excited_site,
                    t_max: check_positive("t-max", a.t_max.or(f.t_max).unwrap_or(20.0))?,
                    dt: check_positive("dt", a.dt.or(f.dt).unwrap_or(0.01))?,
                    dispersion: parse_dispersion(a.dispersion.or(f.dispersion.clone()))?,
                };
                (Params::Chain(p), a.common, f)
            }
            Command::Decompose(a) => {
                let f = load(&a.common)?;
                let system = SystemKind::parse(
                    &a.system
                        .or(f.system.clone())
                        .unwrap_or_else(|| "two-fluxon".into()),
                )?;
                let link_ms = match a.link_ms {
                    Some(s) => Some(parse_int_list(&s)?),
                    None => f.link_ms.clone(),
                };
                let m = a.m.or(f.m).unwrap_or(0);
                let link_ms = if system == SystemKind::Chain {
                    let n =
                        a.n.or(f.n)
                            .unwrap_or_else(|| link_ms.as_ref().map_or(4, |l| l.len() + 1));
                    if !(2..=MAX_CHAIN_FLUXONS).contains(&n) {
                        return Err(usage(format!(
                            "--n must be in 2..={MAX_CHAIN_FLUXONS}, got {n}"
                        )));
                    }
                    let l = link_ms.unwrap_or_else(|| vec![m; n - 1]);
                    if l.len() + 1 != n {
                        return Err(usage(format!(
                            "--link-ms has {} entries, expected {} for n = {n}",
                            l.len(),
                            n - 1
                        )));
                    }
                    l
                } else {
                    Vec::new()
                };
                let g1 = a.g1.or(f.g1).or(a.g).or(f.g).unwrap_or(0.0);
                let p = DecomposeConfig {
                    system,
                    m,
                    delta: check_delta(a.delta.or(f.delta).unwrap_or(1.0))?,
                    g1: check_finite("g1", g1)?,
                    g2: check_finite("g2", a.g2.or(f.g2).unwrap_or(0.0))?,
                    link_ms,
                    dispersion: parse_dispersion(a.dispersion.or(f.dispersion.clone()))?,
                    orientations: parse_orientations(a.orientations, f.orientations.clone())?,
                };
                (Params::Decompose(p), a.common, f)
            }
        };

        let out_flag = common.out.or(file.out);
        let format = match common.format.or(file.format) {
            Some(s) => Format::parse(&s).ok_or_else(|| usage(format!("unknown format '{s}'")))?,
            None => match out_flag
                .as_ref()
                .and_then(|p| p.extension())
                .and_then(|e| e.to_str())
            {
                Some("json") => Format::Json,
                Some("csv") => Format::Csv,
                _ if matches!(params, Params::Bloch(_)) => Format::Json,
                _ => Format::Csv,
            },
        };
        let out = out_flag.unwrap_or_else(|| {
            PathBuf::from(format!("{}.{}", params.command(), format.extension()))
        });
        Ok(RunConfig {
            params,
            out,
            format,
        })
    }
}
