//! The JSON result envelope shared by all subcommands.

use serde::Serialize;
use serde_json::Value;

/// A numeric output: decimal string plus the tolerance it is certified to.
#[derive(Debug, Clone, Serialize)]
pub struct Numeric {
    pub value: String,
    pub tolerance: String,
}

impl Numeric {
    pub fn new(value: f64, tolerance: f64) -> Self {
        Numeric { value: decimal(value), tolerance: decimal(tolerance) }
    }
}

/// One pass/fail check carried out by a subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Structured failure.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub command: String,
    pub version: String,
    pub inputs: Value,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub exact: Value,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub numeric: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cache: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Failure>,
}

impl Envelope {
    pub fn new(command: &str, inputs: Value) -> Self {
        Envelope {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs,
            exact: Value::Null,
            numeric: Value::Null,
            checks: Vec::new(),
            cache: Vec::new(),
            seconds: None,
            error: None,
        }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(Check { name: name.to_string(), pass, detail });
    }

    pub fn fail(&mut self, e: &greencm::Error) {
        let kind = format!("{e:?}");
        let kind = kind.split('(').next().unwrap_or("Error").to_string();
        self.error = Some(Failure { kind, message: e.to_string() });
    }

    /// `true` if no error occurred and every check passed.
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }
}

/// Shortest decimal rendering of a double (never exponent notation).
pub fn decimal(x: f64) -> String {
    format!("{x}")
}
