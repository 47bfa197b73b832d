//! Model parameters shared by every command, keyed by their flag names.

use std::collections::BTreeMap;
use std::path::Path;

use casimir_friction::units::Dims;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Number,
    Integer,
    Text,
}

/// Every recognised key, its kind and (for numbers) its Gaussian dimensions.
pub const KEYS: &[(&str, Kind, Dims)] = &[
    ("alpha", Kind::Number, Dims::DIMENSIONLESS),
    ("beta", Kind::Number, Dims::INVERSE_ENERGY),
    ("temperature-kelvin", Kind::Number, Dims::DIMENSIONLESS),
    ("d", Kind::Number, Dims::LENGTH),
    ("z0", Kind::Number, Dims::LENGTH),
    ("rho1", Kind::Number, Dims::NUMBER_DENSITY),
    ("rho2", Kind::Number, Dims::NUMBER_DENSITY),
    ("omega-p", Kind::Number, Dims::FREQUENCY),
    ("nu", Kind::Number, Dims::FREQUENCY),
    ("D1", Kind::Number, Dims::SPECTRAL_SLOPE),
    ("D2", Kind::Number, Dims::SPECTRAL_SLOPE),
    ("v", Kind::Number, Dims::VELOCITY),
    ("omega-1", Kind::Number, Dims::FREQUENCY),
    ("omega-2", Kind::Number, Dims::FREQUENCY),
    ("polarizability-1", Kind::Number, Dims::POLARIZABILITY),
    ("polarizability-2", Kind::Number, Dims::POLARIZABILITY),
    ("zeta-r", Kind::Number, Dims::DIMENSIONLESS),
    ("tail-tol", Kind::Number, Dims::DIMENSIONLESS),
    ("length-scale", Kind::Number, Dims::DIMENSIONLESS),
    ("samples", Kind::Integer, Dims::DIMENSIONLESS),
    ("seed", Kind::Integer, Dims::DIMENSIONLESS),
    ("spectrum-file-1", Kind::Text, Dims::DIMENSIONLESS),
    ("spectrum-file-2", Kind::Text, Dims::DIMENSIONLESS),
    ("units", Kind::Text, Dims::DIMENSIONLESS),
];

pub fn kind_of(key: &str) -> Option<Kind> {
    KEYS.iter().find(|k| k.0 == key).map(|k| k.1)
}

pub fn dims_of(key: &str) -> Dims {
    KEYS.iter().find(|k| k.0 == key).map_or(Dims::DIMENSIONLESS, |k| k.2)
}

/// Resolved parameter set. Values are kept as their source text so that
/// precedence merging and output echo are lossless.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    pub fn defaults() -> Self {
        let mut p = Self::default();
        for (k, v) in [("units", "reduced"), ("seed", "0"), ("tail-tol", "1e-12"), ("zeta-r", "1e-3"), ("samples", "1000000")] {
            p.values.insert(k.to_string(), v.to_string());
        }
        p
    }

    /// Sets `key`, validating that it is known and well-formed.
    pub fn set(&mut self, key: &str, value: &str) -> CliResult<()> {
        let kind = kind_of(key).ok_or_else(|| CliError::Config(format!("unknown key '{key}'")))?;
        let value = value.trim();
        match kind {
            Kind::Number => {
                value
                    .parse::<f64>()
                    .map_err(|_| CliError::Config(format!("key '{key}': '{value}' is not a number")))?;
            }
            Kind::Integer => {
                value
                    .parse::<u64>()
                    .map_err(|_| CliError::Config(format!("key '{key}': '{value}' is not a non-negative integer")))?;
            }
            Kind::Text => {
                if key == "units" && value != "reduced" && value != "gaussian" {
                    return Err(CliError::Config(format!("key 'units': '{value}' is not one of reduced, gaussian")));
                }
            }
        }
        self.values.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn set_number(&mut self, key: &str, value: f64) {
        self.values.insert(key.to_string(), format!("{value}"));
    }

    /// Overlays `other` on top of `self`.
    pub fn merge(&mut self, other: &Params) {
        for (k, v) in &other.values {
            self.values.insert(k.clone(), v.clone());
        }
    }

    pub fn contains(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.values.get(key).and_then(|v| v.parse().ok())
    }

    pub fn require(&self, key: &str) -> CliResult<f64> {
        self.get(key)
            .ok_or_else(|| CliError::Config(format!("missing required parameter '--{key}'")))
    }

    pub fn integer(&self, key: &str) -> Option<u64> {
        self.values.get(key).and_then(|v| v.parse().ok())
    }

    pub fn text(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Parses a flat `key = value` file; `#` starts a comment.
    pub fn from_config_text(text: &str, origin: &str) -> CliResult<Params> {
        let mut p = Params::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("{origin}:{}: expected key = value", i + 1)))?;
            let key = k.trim().trim_start_matches("--");
            p.set(key, v).map_err(|e| match e {
                CliError::Config(m) => CliError::Config(format!("{origin}:{}: {m}", i + 1)),
                other => other,
            })?;
        }
        Ok(p)
    }

    pub fn from_config_file(path: &Path) -> CliResult<Params> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config '{}': {e}", path.display())))?;
        Self::from_config_text(&text, &path.display().to_string())
    }
}
