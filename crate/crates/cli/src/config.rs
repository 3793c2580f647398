//! Run configuration: built-in defaults, an optional `key = value` file and
//! command-line flags, in increasing order of precedence.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use dampedosc::{log_temperature_grid, OscillatorParams};

use crate::CliError;

pub const DEFAULT_TMIN: f64 = 0.01;
pub const DEFAULT_TMAX: f64 = 10.0;
pub const DEFAULT_TPOINTS: usize = 200;
pub const DEFAULT_POINT_TEMPERATURE: f64 = 0.05;
pub const DEFAULT_N_BATH: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// ω = 1.2, M₀ = 1.1, M₁ = 1.11, η = 48, ω_D = 1200
    Reference,
    /// ω = 1, M₀ = 1, M₁ = 1.1, η = 1, ω_D = 10
    Moderate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

/// Settings that may come from the config file or the command line.
#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct Overrides {
    /// Parameter preset the other settings start from
    #[arg(long, global = true, value_enum)]
    pub preset: Option<Preset>,
    /// Initial oscillator mass M₀
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mass: Option<f64>,
    /// Final mass M₁ of the mass variation
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mass1: Option<f64>,
    /// Bare oscillator frequency ω
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    /// Ohmic damping strength η
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub eta: Option<f64>,
    /// Drude cutoff frequency ω_D
    #[arg(long = "omega-d", global = true, allow_hyphen_values = true)]
    pub omega_d: Option<f64>,
    /// Reduced Planck constant
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub hbar: Option<f64>,
    /// Boltzmann constant
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub kb: Option<f64>,
    /// Lowest grid temperature
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tmin: Option<f64>,
    /// Highest grid temperature
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tmax: Option<f64>,
    /// Number of log-spaced grid temperatures
    #[arg(long, global = true)]
    pub tpoints: Option<usize>,
    /// Explicit temperatures (comma-separated); replaces the grid
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub temperature: Option<Vec<f64>>,
    /// Largest bath size for the oracle; the ladder is n/8, n/4, n/2, n
    #[arg(long = "n-bath", global = true)]
    pub n_bath: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

impl Overrides {
    /// `self` wins wherever it is set.
    pub fn over(self, base: Overrides) -> Overrides {
        Overrides {
            preset: self.preset.or(base.preset),
            mass: self.mass.or(base.mass),
            mass1: self.mass1.or(base.mass1),
            omega: self.omega.or(base.omega),
            eta: self.eta.or(base.eta),
            omega_d: self.omega_d.or(base.omega_d),
            hbar: self.hbar.or(base.hbar),
            kb: self.kb.or(base.kb),
            tmin: self.tmin.or(base.tmin),
            tmax: self.tmax.or(base.tmax),
            tpoints: self.tpoints.or(base.tpoints),
            temperature: self.temperature.or(base.temperature),
            n_bath: self.n_bath.or(base.n_bath),
            format: self.format.or(base.format),
        }
    }

    /// Parse a config file: one `key = value` per line, `#` starts a comment,
    /// `-` and `_` are interchangeable in keys.
    pub fn from_file(path: &Path) -> Result<Overrides, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Overrides, String> {
        let mut o = Overrides::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            let err = |what: &str| format!("line {}: bad {what} value {value:?}", lineno + 1);
            let real = || value.parse::<f64>().map_err(|_| err(&key));
            let count = || value.parse::<usize>().map_err(|_| err(&key));
            match key.as_str() {
                "preset" => {
                    o.preset = Some(Preset::from_str(value, true).map_err(|_| err("preset"))?)
                }
                "mass" => o.mass = Some(real()?),
                "mass1" => o.mass1 = Some(real()?),
                "omega" => o.omega = Some(real()?),
                "eta" => o.eta = Some(real()?),
                "omega_d" => o.omega_d = Some(real()?),
                "hbar" => o.hbar = Some(real()?),
                "kb" => o.kb = Some(real()?),
                "tmin" => o.tmin = Some(real()?),
                "tmax" => o.tmax = Some(real()?),
                "tpoints" => o.tpoints = Some(count()?),
                "temperature" => {
                    let list = value
                        .split(',')
                        .map(|s| s.trim().parse::<f64>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| err("temperature"))?;
                    o.temperature = Some(list);
                }
                "n_bath" => o.n_bath = Some(count()?),
                "format" => {
                    o.format = Some(Format::from_str(value, true).map_err(|_| err("format"))?)
                }
                _ => return Err(format!("line {}: unknown key {key:?}", lineno + 1)),
            }
        }
        Ok(o)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: OscillatorParams,
    pub mass1: f64,
    /// Strictly positive and ascending, unless `exact_limit` admits `0`.
    pub temperatures: Vec<f64>,
    /// Whether the temperatures were given explicitly rather than as a grid.
    pub explicit_temperatures: bool,
    pub n_bath: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub exact_limit: bool,
}

impl RunConfig {
    pub fn resolve(
        flags: Overrides,
        config_file: Option<&Path>,
        out: Option<PathBuf>,
        exact_limit: bool,
    ) -> Result<RunConfig, CliError> {
        let file = match config_file {
            Some(path) => Overrides::from_file(path)?,
            None => Overrides::default(),
        };
        let o = flags.over(file);

        let (base, base_mass1) = match o.preset.unwrap_or(Preset::Reference) {
            Preset::Reference => (
                OscillatorParams::reference(),
                OscillatorParams::REFERENCE_FINAL_MASS,
            ),
            Preset::Moderate => (OscillatorParams::moderate(), 1.1),
        };
        let params = OscillatorParams::new(
            o.mass.unwrap_or(base.mass),
            o.omega.unwrap_or(base.omega),
            o.eta.unwrap_or(base.eta),
            o.omega_d.unwrap_or(base.omega_d),
        )
        .and_then(|p| p.with_units(o.hbar.unwrap_or(base.hbar), o.kb.unwrap_or(base.kb)))
        .map_err(|e| CliError::Usage(e.to_string()))?;
        let mass1 = o.mass1.unwrap_or(base_mass1);
        params
            .with_mass(mass1)
            .map_err(|e| CliError::Usage(format!("--mass1: {e}")))?;

        let explicit_temperatures = o.temperature.is_some();
        let temperatures = match o.temperature {
            Some(list) => list,
            None => log_temperature_grid(
                o.tmin.unwrap_or(DEFAULT_TMIN),
                o.tmax.unwrap_or(DEFAULT_TMAX),
                o.tpoints.unwrap_or(DEFAULT_TPOINTS),
            )
            .map_err(|e| CliError::Usage(e.to_string()))?,
        };
        check_temperatures(&temperatures, exact_limit)?;

        Ok(RunConfig {
            params,
            mass1,
            temperatures,
            explicit_temperatures,
            n_bath: o.n_bath.unwrap_or(DEFAULT_N_BATH),
            format: o.format.unwrap_or(Format::Csv),
            out,
            exact_limit,
        })
    }
}

fn check_temperatures(ts: &[f64], exact_limit: bool) -> Result<(), CliError> {
    if ts.is_empty() {
        return Err(CliError::Usage("no temperatures given".into()));
    }
    for &t in ts {
        if !t.is_finite() || t < 0.0 {
            return Err(CliError::Usage(format!("temperature {t} is not a non-negative number")));
        }
        if t == 0.0 && !exact_limit {
            return Err(CliError::Usage(
                "T = 0 needs --exact-limit (evaluated from the ground-state limit and the low-temperature expansions)".into(),
            ));
        }
    }
    if ts.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage("temperatures must be strictly ascending".into()));
    }
    Ok(())
}
