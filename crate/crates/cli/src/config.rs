//! Command-line flags, JSON config files and the resolved [`RunConfig`].
//!
//! Precedence: built-in defaults, then `--config` file keys, then explicit
//! flags. The resolved config is echoed as JSON `meta` and can be fed back
//! through `--config` unchanged.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::AppError;

#[derive(Debug, Parser)]
#[command(
    name = "unruh-pair",
    version,
    about = "Entanglement dynamics of two uniformly accelerated atoms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the rate coefficients A1, A2, B1, B2, D and f
    Coeffs(Opts),
    /// Trajectory of the X state and its concurrence
    Evolve(Opts),
    /// Analytic and finite-difference C'(0), with and without D
    Rate(Opts),
    /// Boolean generation region over (ωL, a/ω)
    Region(Opts),
    /// C'(0) or maximum concurrence along one parameter axis
    Sweep(Opts),
    /// Maximum concurrence at a single point, with and without D
    Maxc(Opts),
    /// Stationary state and its concurrence
    Steady(Opts),
    /// Compare exact propagation with the dense GKLS integrator
    Oracle(Opts),
}

impl Command {
    pub fn split(self) -> (CommandName, Opts) {
        match self {
            Command::Coeffs(o) => (CommandName::Coeffs, o),
            Command::Evolve(o) => (CommandName::Evolve, o),
            Command::Rate(o) => (CommandName::Rate, o),
            Command::Region(o) => (CommandName::Region, o),
            Command::Sweep(o) => (CommandName::Sweep, o),
            Command::Maxc(o) => (CommandName::Maxc, o),
            Command::Steady(o) => (CommandName::Steady, o),
            Command::Oracle(o) => (CommandName::Oracle, o),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Coeffs,
    Evolve,
    Rate,
    Region,
    Sweep,
    Maxc,
    Steady,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum InitName {
    ProductEg,
    Superposition,
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum AxisName {
    Accel,
    Sep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SpacingName {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum QuantityName {
    Rate,
    Maxc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum RateKind {
    Raw,
    Clamped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Opts {
    /// JSON file with the same keys as the flags (snake_case)
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Acceleration a/ω
    #[arg(long, allow_negative_numbers = true)]
    pub accel: Option<f64>,
    /// Separation ωL
    #[arg(long, allow_negative_numbers = true)]
    pub sep: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma0: Option<f64>,
    /// Keep the environment-induced interaction D (default)
    #[arg(long, conflicts_with = "no_d")]
    pub with_d: bool,
    /// Drop the environment-induced interaction D
    #[arg(long)]
    pub no_d: bool,
    #[arg(long, value_enum)]
    pub init: Option<InitName>,
    /// Superposition angle θ in radians: cosθ|A⟩ + sinθ e^{iφ}|S⟩
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Superposition phase φ in radians
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// Explicit X state: p_gg,p_ee,p_aa,p_ss,re_as,im_as,re_ge,im_ge
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub rho: Option<Vec<f64>>,
    /// Time horizon in units of 1/Γ0
    #[arg(long, allow_negative_numbers = true)]
    pub tau_max: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Dense-integrator step (oracle) or finite-difference step (rate)
    #[arg(long, allow_negative_numbers = true)]
    pub dt: Option<f64>,
    #[arg(long, value_enum)]
    pub axis: Option<AxisName>,
    /// Sweep range LO,HI along the axis
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub range: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    pub spacing: Option<SpacingName>,
    #[arg(long, value_enum)]
    pub quantity: Option<QuantityName>,
    #[arg(long, value_enum)]
    pub rate_kind: Option<RateKind>,
    /// Points per axis (sweep, region)
    #[arg(long)]
    pub grid: Option<usize>,
    /// Region scan ωL range LO,HI
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub sep_range: Option<Vec<f64>>,
    /// Region scan a/ω range LO,HI
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub accel_range: Option<Vec<f64>>,
    /// Output file (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Print a gnuplot one-liner for the output to stderr
    #[arg(long)]
    pub gnuplot_hint: bool,
}

/// Fully resolved run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandName,
    pub accel: f64,
    pub sep: f64,
    pub gamma0: f64,
    pub with_d: bool,
    pub init: InitName,
    pub theta: Option<f64>,
    pub phi: Option<f64>,
    pub rho: Option<[f64; 8]>,
    pub tau_max: Option<f64>,
    pub samples: usize,
    pub dt: Option<f64>,
    pub axis: AxisName,
    pub range: Option<[f64; 2]>,
    pub spacing: Option<SpacingName>,
    pub quantity: QuantityName,
    pub rate_kind: RateKind,
    pub grid: Option<usize>,
    pub sep_range: Option<[f64; 2]>,
    pub accel_range: Option<[f64; 2]>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn defaults(command: CommandName) -> Self {
        RunConfig {
            command,
            accel: 0.1,
            sep: 0.5,
            gamma0: 1.0,
            with_d: true,
            init: InitName::ProductEg,
            theta: None,
            phi: None,
            rho: None,
            tau_max: None,
            samples: 401,
            dt: None,
            axis: AxisName::Accel,
            range: None,
            spacing: None,
            quantity: QuantityName::Rate,
            rate_kind: RateKind::Raw,
            grid: None,
            sep_range: None,
            accel_range: None,
            out: None,
            format: Format::Csv,
        }
    }

    /// Defaults, overlaid by the config file, overlaid by explicit flags.
    pub fn resolve(command: CommandName, opts: &Opts) -> Result<Self, AppError> {
        let mut merged = match serde_json::to_value(Self::defaults(command)) {
            Ok(Value::Object(m)) => m,
            _ => unreachable!("RunConfig serializes to an object"),
        };
        if let Some(path) = &opts.config {
            let text = fs::read_to_string(path).map_err(|source| AppError::Io {
                path: path.display().to_string(),
                source,
            })?;
            let file: Value = serde_json::from_str(&text)
                .map_err(|e| AppError::usage("config", format!("{}: {e}", path.display())))?;
            let Value::Object(file) = file else {
                return Err(AppError::usage(
                    "config",
                    "config file must hold a JSON object",
                ));
            };
            for (key, value) in file {
                // `command` and `version` appear in echoed metadata; the
                // subcommand on the command line wins.
                if key == "command" || key == "version" {
                    continue;
                }
                if !merged.contains_key(&key) {
                    return Err(AppError::usage(
                        "config",
                        format!("unknown config key `{key}`"),
                    ));
                }
                merged.insert(key, value);
            }
        }
        overlay_flags(&mut merged, opts);
        let config: RunConfig = serde_json::from_value(Value::Object(merged))
            .map_err(|e| AppError::usage("config", e.to_string()))?;
        config.check_consistency()?;
        Ok(config)
    }

    fn check_consistency(&self) -> Result<(), AppError> {
        let angles = self.theta.is_some() || self.phi.is_some();
        match self.init {
            InitName::Superposition if self.theta.is_none() || self.phi.is_none() => {
                Err(AppError::usage(
                    "missing-angles",
                    "--init superposition needs both --theta and --phi",
                ))
            }
            InitName::Explicit if self.rho.is_none() => Err(AppError::usage(
                "missing-rho",
                "--init explicit needs --rho",
            )),
            InitName::ProductEg | InitName::Explicit if angles => Err(AppError::usage(
                "conflicting-flags",
                "--theta/--phi only apply to --init superposition",
            )),
            InitName::ProductEg | InitName::Superposition if self.rho.is_some() => Err(
                AppError::usage("conflicting-flags", "--rho only applies to --init explicit"),
            ),
            _ => Ok(()),
        }
    }
}

fn overlay_flags(merged: &mut Map<String, Value>, o: &Opts) {
    let mut set = |key: &str, value: Value| {
        merged.insert(key.to_owned(), value);
    };
    let num = |x: f64| Value::from(x);
    let pair = |v: &Vec<f64>| Value::from(v.clone());
    if let Some(x) = o.accel {
        set("accel", num(x));
    }
    if let Some(x) = o.sep {
        set("sep", num(x));
    }
    if let Some(x) = o.gamma0 {
        set("gamma0", num(x));
    }
    if o.with_d {
        set("with_d", Value::Bool(true));
    }
    if o.no_d {
        set("with_d", Value::Bool(false));
    }
    if let Some(x) = o.init {
        set("init", enum_value(x));
    }
    if let Some(x) = o.theta {
        set("theta", num(x));
    }
    if let Some(x) = o.phi {
        set("phi", num(x));
    }
    if let Some(v) = &o.rho {
        set("rho", pair(v));
    }
    if let Some(x) = o.tau_max {
        set("tau_max", num(x));
    }
    if let Some(n) = o.samples {
        set("samples", Value::from(n));
    }
    if let Some(x) = o.dt {
        set("dt", num(x));
    }
    if let Some(x) = o.axis {
        set("axis", enum_value(x));
    }
    if let Some(v) = &o.range {
        set("range", pair(v));
    }
    if let Some(x) = o.spacing {
        set("spacing", enum_value(x));
    }
    if let Some(x) = o.quantity {
        set("quantity", enum_value(x));
    }
    if let Some(x) = o.rate_kind {
        set("rate_kind", enum_value(x));
    }
    if let Some(n) = o.grid {
        set("grid", Value::from(n));
    }
    if let Some(v) = &o.sep_range {
        set("sep_range", pair(v));
    }
    if let Some(v) = &o.accel_range {
        set("accel_range", pair(v));
    }
    if let Some(p) = &o.out {
        set("out", Value::from(p.display().to_string()));
    }
    if let Some(x) = o.format {
        set("format", enum_value(x));
    }
}

fn enum_value<T: Serialize>(x: T) -> Value {
    serde_json::to_value(x).expect("unit enums serialize to strings")
}
