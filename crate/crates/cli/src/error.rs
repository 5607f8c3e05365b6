// Copyright 2026 edjcm contributors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use edjcm_core::error::{Error, IntegrationError, LinalgError, ModelError, SemiclassicalError, ThermoError};

/// Failure of a CLI run, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad configuration or arguments (exit 1).
    Validation(String),
    /// The numerics broke down (exit 2); `details` goes to the diagnostic file.
    Numerical { message: String, details: serde_json::Value },
    Io(String),
}

impl CliError {
    pub fn validation(msg: String) -> Self {
        CliError::Validation(msg)
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        CliError::Numerical { message: msg.into(), details: serde_json::Value::Null }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 1,
            CliError::Numerical { .. } => 2,
        }
    }

    pub fn with_context(self, ctx: &str) -> Self {
        match self {
            CliError::Validation(m) => CliError::Validation(format!("{ctx}: {m}")),
            CliError::Numerical { message, details } => CliError::Numerical { message: format!("{ctx}: {message}"), details },
            CliError::Io(m) => CliError::Io(format!("{ctx}: {m}")),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "{m}"),
            CliError::Numerical { message, .. } => write!(f, "numerical failure: {message}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn integration_details(e: &IntegrationError) -> serde_json::Value {
    use serde_json::json;
    match e {
        IntegrationError::TraceDrift { time, drift, limit } => json!({"kind": "trace", "time": time, "drift": drift, "limit": limit}),
        IntegrationError::Positivity { time, min_eigenvalue } => {
            json!({"kind": "positivity", "time": time, "min_eigenvalue": min_eigenvalue})
        }
        IntegrationError::Truncation { time, occupancy, limit, cutoff } => {
            json!({"kind": "truncation", "time": time, "occupancy": occupancy, "limit": limit, "cutoff": cutoff})
        }
        IntegrationError::NonFinite { time } => json!({"kind": "non_finite", "time": time}),
        IntegrationError::Observer { time, message } => json!({"kind": "observer", "time": time, "message": message}),
        _ => serde_json::Value::Null,
    }
}

impl From<IntegrationError> for CliError {
    fn from(e: IntegrationError) -> Self {
        match &e {
            IntegrationError::Config(m) => CliError::Validation(format!("integration: {m}")),
            IntegrationError::Model(m) => CliError::from(m.clone()),
            _ => CliError::Numerical { message: e.to_string(), details: integration_details(&e) },
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Linalg(l) => CliError::numerical(l.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<ThermoError> for CliError {
    fn from(e: ThermoError) -> Self {
        match e {
            ThermoError::Model(m) => CliError::from(m),
            ThermoError::SecondLaw { time, sigma } => CliError::Numerical {
                message: e.to_string(),
                details: serde_json::json!({"kind": "second_law", "time": time, "sigma": sigma}),
            },
            other => CliError::numerical(other.to_string()),
        }
    }
}

impl From<SemiclassicalError> for CliError {
    fn from(e: SemiclassicalError) -> Self {
        match e {
            SemiclassicalError::InvalidParameter { .. } | SemiclassicalError::Model(_) => CliError::Validation(e.to_string()),
            other => CliError::numerical(other.to_string()),
        }
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::numerical(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Integration(x) => x.into(),
            Error::Model(x) => x.into(),
            Error::Thermo(x) => x.into(),
            Error::Semiclassical(x) => x.into(),
            other => CliError::numerical(other.to_string()),
        }
    }
}
