//! Run configuration: a JSON file, overridden field by field by flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Levels,
    Scan,
    Verify,
    Gaudin,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Levels => "levels",
            Command::Scan => "scan",
            Command::Verify => "verify",
            Command::Gaudin => "gaudin",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Rotational constants `A ≥ B ≥ C`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Molecule {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// A single κ or an inclusive grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KappaSpec {
    Value(f64),
    Grid { start: f64, stop: f64, step: f64 },
}

/// Grid values are snapped to this resolution so that `-1:1:0.1` yields
/// exactly `0.3` rather than `0.30000000000000004`.
const GRID_SNAP: f64 = 1e-12;

impl KappaSpec {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        match *self {
            KappaSpec::Value(k) => {
                check_kappa(k)?;
                Ok(vec![k])
            }
            KappaSpec::Grid { start, stop, step } => {
                if !(step > 0.0) || !step.is_finite() {
                    return Err(CliError::Config(format!("kappa grid step must be positive, got {step}")));
                }
                if !(stop >= start) {
                    return Err(CliError::Config(format!("kappa grid stop {stop} is below start {start}")));
                }
                let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
                let values: Vec<f64> = (0..count)
                    .map(|i| {
                        let x = start + i as f64 * step;
                        let snapped = (x / GRID_SNAP).round() * GRID_SNAP;
                        if snapped == 0.0 { 0.0 } else { snapped }
                    })
                    .collect();
                for &k in &values {
                    check_kappa(k)?;
                }
                Ok(values)
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("cannot read '{s}' as a number in --kappa")))
        };
        let parts: Vec<&str> = text.split(':').collect();
        match parts.as_slice() {
            [x] => Ok(KappaSpec::Value(num(x)?)),
            [start, stop, step] => Ok(KappaSpec::Grid {
                start: num(start)?,
                stop: num(stop)?,
                step: num(step)?,
            }),
            _ => Err(CliError::Config(format!(
                "--kappa expects x or start:stop:step, got '{text}'"
            ))),
        }
    }
}

fn check_kappa(k: f64) -> Result<(), CliError> {
    if !k.is_finite() || k.abs() > 1.0 {
        return Err(CliError::Config(format!("kappa = {k} lies outside [-1, 1]")));
    }
    Ok(())
}

impl Molecule {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let vals = text
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CliError::Config(format!("--molecule expects A,B,C, got '{text}'")))?;
        match vals.as_slice() {
            &[a, b, c] => Ok(Molecule { a, b, c }),
            _ => Err(CliError::Config(format!("--molecule expects three constants, got {}", vals.len()))),
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let Molecule { a, b, c } = *self;
        if !(a.is_finite() && b.is_finite() && c.is_finite()) || !(c > 0.0) {
            return Err(CliError::Config("rotational constants must be finite and positive".into()));
        }
        if !(a >= b && b >= c) {
            return Err(CliError::Config(format!("rotational constants must satisfy A >= B >= C, got {a}, {b}, {c}")));
        }
        if a == c {
            return Err(CliError::Config("spherical top (A = B = C) has no Ray form".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub path: Option<PathBuf>,
    /// Defaults to CSV for tables and JSON for `verify`.
    #[serde(default)]
    pub format: Option<Format>,
}

/// Check thresholds. A check passes when its residual is at most the
/// tolerance, except `expansion_order`, which is a lower bound on a slope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub algebra: f64,
    pub ybe: f64,
    pub rll: f64,
    pub transfer_commutator: f64,
    pub expansion_order: f64,
    pub gaudin_limit: f64,
    pub commuting_pair: f64,
    pub reconstruction: f64,
    pub delta_eps_invariance: f64,
    pub reflection: f64,
    pub symmetric_top: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            algebra: 1e-13,
            ybe: 1e-12,
            rll: 1e-11,
            transfer_commutator: 1e-11,
            expansion_order: 2.8,
            gaudin_limit: 1e-6,
            commuting_pair: 1e-11,
            reconstruction: 1e-9,
            delta_eps_invariance: 1e-10,
            reflection: 1e-9,
            symmetric_top: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), CliError> {
        if !value.is_finite() {
            return Err(CliError::Config(format!("tolerance {name} must be finite")));
        }
        let slot = match name {
            "algebra" => &mut self.algebra,
            "ybe" => &mut self.ybe,
            "rll" => &mut self.rll,
            "transfer_commutator" => &mut self.transfer_commutator,
            "expansion_order" => &mut self.expansion_order,
            "gaudin_limit" => &mut self.gaudin_limit,
            "commuting_pair" => &mut self.commuting_pair,
            "reconstruction" => &mut self.reconstruction,
            "delta_eps_invariance" => &mut self.delta_eps_invariance,
            "reflection" => &mut self.reflection,
            "symmetric_top" => &mut self.symmetric_top,
            other => return Err(CliError::Config(format!("unknown tolerance '{other}'"))),
        };
        *slot = value;
        Ok(())
    }
}

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_J_MAX: u32 = 10;
pub const DEFAULT_VERIFY_J_MAX: u32 = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub command: Option<Command>,
    #[serde(default)]
    pub molecule: Option<Molecule>,
    #[serde(default)]
    pub kappa: Option<KappaSpec>,
    /// Smallest `j` emitted by `levels`, `scan` and `gaudin`.
    #[serde(default)]
    pub j_min: Option<u32>,
    #[serde(default)]
    pub j_max: Option<u32>,
    /// Spectral shift `ε_A − ε_B` used by `gaudin` and `verify`.
    #[serde(default)]
    pub delta_eps: Option<f64>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn empty() -> Self {
        Self {
            command: None,
            molecule: None,
            kappa: None,
            j_min: None,
            j_max: None,
            delta_eps: None,
            tolerances: Tolerances::default(),
            output: OutputSpec::default(),
            seed: None,
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }

    pub fn format(&self) -> Format {
        match (self.output.format, self.command) {
            (Some(f), _) => f,
            (None, Some(Command::Verify)) => Format::Json,
            (None, _) => Format::Csv,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn delta_eps(&self) -> f64 {
        self.delta_eps.unwrap_or(crate::gaudin::DEFAULT_DELTA_EPS)
    }

    pub fn j_min(&self) -> u32 {
        self.j_min.unwrap_or(0)
    }

    pub fn j_max(&self) -> u32 {
        match (self.j_max, self.command) {
            (Some(j), _) => j,
            (None, Some(Command::Verify)) => DEFAULT_VERIFY_J_MAX,
            (None, _) => DEFAULT_J_MAX,
        }
    }

    /// Checks the invariants the chosen command relies on.
    pub fn validate(&self) -> Result<(), CliError> {
        let command = self
            .command
            .ok_or_else(|| CliError::Config("no command given".into()))?;
        if let Some(m) = &self.molecule {
            m.validate()?;
        }
        if self.j_min() > self.j_max() {
            return Err(CliError::Config(format!("j_min = {} exceeds j_max = {}", self.j_min(), self.j_max())));
        }
        if let Some(k) = &self.kappa {
            k.values()?;
        }
        if let Some(d) = self.delta_eps {
            if d == 0.0 || !d.is_finite() {
                return Err(CliError::Config(format!("delta_eps must be finite and nonzero, got {d}")));
            }
        }
        match command {
            Command::Levels => match (&self.molecule, &self.kappa) {
                (Some(_), None) => Ok(()),
                (None, Some(KappaSpec::Value(_))) => Ok(()),
                (None, Some(KappaSpec::Grid { .. })) => {
                    Err(CliError::Config("levels takes a single kappa; use scan for a grid".into()))
                }
                _ => Err(CliError::Config("levels needs exactly one of molecule or kappa".into())),
            },
            Command::Scan | Command::Gaudin => {
                if self.molecule.is_some() {
                    return Err(CliError::Config(format!("{} takes kappa, not molecule", command.as_str())));
                }
                if self.kappa.is_none() {
                    return Err(CliError::Config(format!("{} needs kappa", command.as_str())));
                }
                Ok(())
            }
            Command::Verify => {
                if self.output.format == Some(Format::Csv) {
                    return Err(CliError::Config("verify writes a JSON report; csv is not available".into()));
                }
                Ok(())
            }
        }
    }
}

/// Parses one `name=value` tolerance override.
pub fn parse_override(text: &str) -> Result<(String, f64), CliError> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("--tol-override expects name=value, got '{text}'")))?;
    let value = value
        .trim()
        .parse::<f64>()
        .map_err(|_| CliError::Config(format!("tolerance value '{value}' is not a number")))?;
    Ok((name.trim().to_string(), value))
}
