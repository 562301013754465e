//! Scenario configuration files.
//!
//! Flat dotted-key text, one `key = value` pair per line, `#` comments:
//!
//! ```text
//! levels.delta31 = 1
//! levels.delta21 = 0.3
//! drive.epsilon = 0.001
//! bath.hot.model = white
//! bath.hot.temperature = 0.2
//! bath.hot.coupling = 0.001
//! bath.cold.model = power_law
//! bath.cold.temperature = 0.1
//! bath.cold.coupling = 0.001
//! bath.cold.exponent = 1
//! bath.env.model = white
//! bath.env.temperature = 0.2
//! bath.env.coupling = 0.001
//! ```
//!
//! The key set is closed: anything else is an error, not a warning. `model`
//! defaults to `white`; `exponent` is required for `power_law` and rejected
//! otherwise. Writing and re-parsing a scenario reproduces it exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{BathLabel, BathModel, BathSpec, LevelStructure, Scenario};

const KEYS: &[&str] = &[
    "levels.delta31",
    "levels.delta21",
    "drive.epsilon",
    "bath.hot.model",
    "bath.hot.temperature",
    "bath.hot.coupling",
    "bath.hot.exponent",
    "bath.cold.model",
    "bath.cold.temperature",
    "bath.cold.coupling",
    "bath.cold.exponent",
    "bath.env.model",
    "bath.env.temperature",
    "bath.env.coupling",
    "bath.env.exponent",
];

struct RawConfig {
    /// key → (line, value)
    pairs: BTreeMap<String, (usize, String)>,
}

impl RawConfig {
    fn take(&mut self, key: &str) -> Option<String> {
        self.pairs.remove(key).map(|(_, value)| value)
    }

    fn number(&mut self, key: &str) -> Result<Option<f64>> {
        match self.pairs.remove(key) {
            None => Ok(None),
            Some((line, value)) => value.parse::<f64>().map(Some).map_err(|_| Error::Config {
                line,
                message: format!("{key}: expected a number, got {value:?}"),
            }),
        }
    }

    fn required_number(&mut self, key: &str) -> Result<f64> {
        self.number(key)?
            .ok_or_else(|| Error::invalid(key, "missing required key"))
    }
}

fn scan(text: &str) -> Result<RawConfig> {
    let mut pairs: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (index, raw_line) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::Config {
                line,
                message: format!("expected `key = value`, got {content:?}"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        if !KEYS.contains(&key) {
            return Err(Error::Config {
                line,
                message: format!("unknown key {key:?}"),
            });
        }
        if value.is_empty() {
            return Err(Error::Config {
                line,
                message: format!("{key}: empty value"),
            });
        }
        if let Some((first_line, _)) = pairs.get(key) {
            return Err(Error::Config {
                line,
                message: format!("duplicate key {key:?} (first set on line {first_line})"),
            });
        }
        pairs.insert(key.to_owned(), (line, value.to_owned()));
    }
    Ok(RawConfig { pairs })
}

fn bath_from(raw: &mut RawConfig, label: BathLabel) -> Result<BathSpec> {
    let name = label.as_str();
    let temperature = raw.required_number(&format!("bath.{name}.temperature"))?;
    let coupling = raw.required_number(&format!("bath.{name}.coupling"))?;
    let exponent = raw.number(&format!("bath.{name}.exponent"))?;
    let model_key = format!("bath.{name}.model");
    let model = match raw.take(&model_key).as_deref() {
        None | Some("white") => {
            if exponent.is_some() {
                return Err(Error::invalid(
                    format!("bath.{name}.exponent"),
                    "only meaningful for the power_law model",
                ));
            }
            BathModel::White { coupling }
        }
        Some("power_law") => {
            let exponent = exponent.ok_or_else(|| {
                Error::invalid(
                    format!("bath.{name}.exponent"),
                    "required for the power_law model",
                )
            })?;
            BathModel::PowerLaw { coupling, exponent }
        }
        Some(other) => {
            return Err(Error::invalid(
                model_key,
                format!("unknown model {other:?} (expected white or power_law)"),
            ));
        }
    };
    Ok(BathSpec::new(label, temperature, model))
}

/// Parse a configuration document into a validated scenario.
pub fn parse_str(text: &str) -> Result<Scenario> {
    let mut raw = scan(text)?;
    let delta31 = raw.required_number("levels.delta31")?;
    let delta21 = raw.required_number("levels.delta21")?;
    let epsilon = raw.required_number("drive.epsilon")?;
    let hot = bath_from(&mut raw, BathLabel::Hot)?;
    let cold = bath_from(&mut raw, BathLabel::Cold)?;
    let env = bath_from(&mut raw, BathLabel::Env)?;
    let levels = LevelStructure::new(delta31, delta21)?;
    Scenario::new(levels, epsilon, hot, cold, env)
}

/// Parse a configuration file into a validated scenario.
pub fn parse_file(path: impl AsRef<Path>) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)?;
    parse_str(&text)
}

fn write_bath(out: &mut String, bath: &BathSpec) {
    let name = bath.label.as_str();
    let _ = writeln!(out, "bath.{name}.model = {}", bath.model.name());
    let _ = writeln!(out, "bath.{name}.temperature = {}", bath.temperature);
    let _ = writeln!(out, "bath.{name}.coupling = {}", bath.model.coupling());
    if let BathModel::PowerLaw { exponent, .. } = bath.model {
        let _ = writeln!(out, "bath.{name}.exponent = {exponent}");
    }
}

/// Canonical configuration text for a scenario. Parsing the output yields
/// the identical scenario.
pub fn to_config_string(scenario: &Scenario) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "levels.delta31 = {}", scenario.levels.delta31());
    let _ = writeln!(out, "levels.delta21 = {}", scenario.levels.delta21());
    let _ = writeln!(out, "drive.epsilon = {}", scenario.drive.epsilon);
    write_bath(&mut out, &scenario.hot);
    write_bath(&mut out, &scenario.cold);
    write_bath(&mut out, &scenario.env);
    out
}

/// The resolved parameter set as ordered key/value strings, for dataset
/// headers.
pub fn parameter_list(scenario: &Scenario) -> Vec<(String, String)> {
    to_config_string(scenario)
        .lines()
        .filter_map(|line| {
            line.split_once(" = ")
                .map(|(k, v)| (k.to_owned(), v.to_owned()))
        })
        .collect()
}
