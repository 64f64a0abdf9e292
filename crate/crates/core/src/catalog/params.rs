//! Named real parameter sets shared by immersion families and twistor
//! solutions.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("missing parameter `{0}`")]
    Missing(String),
    #[error("cannot parse `{0}` as `name=value`")]
    Parse(String),
}

/// Named real values (`a`, `b`, `c`, `m`, `a1`, ...), ordered by name so
/// serialization is deterministic.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParamSet(BTreeMap<String, f64>);

impl ParamSet {
    pub fn new() -> Self {
        ParamSet::default()
    }

    pub fn from_pairs(pairs: &[(&str, f64)]) -> Self {
        ParamSet(pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect())
    }

    pub fn set(&mut self, name: &str, value: f64) -> &mut Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    pub fn req(&self, name: &str) -> Result<f64, ParamError> {
        self.get(name)
            .ok_or_else(|| ParamError::Missing(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parse one `name=value` fragment, as passed on the command line.
    pub fn parse_assignment(&mut self, s: &str) -> Result<(), ParamError> {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| ParamError::Parse(s.to_string()))?;
        let value: f64 = v
            .trim()
            .parse()
            .map_err(|_| ParamError::Parse(s.to_string()))?;
        self.0.insert(k.trim().to_string(), value);
        Ok(())
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.0 {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{k}={v}")?;
            first = false;
        }
        Ok(())
    }
}
