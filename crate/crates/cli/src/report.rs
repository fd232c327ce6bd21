use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use spectral_core::constants;

pub const SCHEMA: &str = "spectral-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub argv: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conventions {
    pub clifford_sign: f64,
    pub clifford: String,
    pub index: String,
    pub ln_branch: String,
    pub symbol: String,
}

impl Conventions {
    pub fn current() -> Self {
        Self {
            clifford_sign: constants::CLIFFORD_SIGN,
            clifford: constants::CLIFFORD_CONVENTION.into(),
            index: constants::INDEX_CONVENTION.into(),
            ln_branch: constants::LN_BRANCH_CONVENTION.into(),
            symbol: constants::SYMBOL_CONVENTION.into(),
        }
    }
}

/// Top-level JSON document written by every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub command: CommandEcho,
    pub conventions: Conventions,
    pub tolerances: Map<String, Value>,
    pub results: Value,
    pub timing_ms: f64,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }
}

/// Results and tolerances of one command, before the envelope is added.
pub struct Outcome {
    pub results: Value,
    pub tolerances: Map<String, Value>,
    pub csv: Option<String>,
}

impl Outcome {
    pub fn new(results: Value) -> Self {
        Self {
            results,
            tolerances: Map::new(),
            csv: None,
        }
    }

    pub fn tol(mut self, name: &str, value: f64) -> Self {
        self.tolerances.insert(name.into(), Value::from(value));
        self
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl From<spectral_core::Error> for CliError {
    fn from(e: spectral_core::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

pub fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}
