//! Run reports: canonical JSON with a fixed field order.

use std::path::Path;

use frametrace_core::Check;
use serde::Serialize;
use serde_json::Value;

use crate::io::{write_json, IoError};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: Value,
}

/// A non-finite residual is written as `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub residual: Option<f64>,
    pub tol: f64,
    pub pass: bool,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        CheckRecord {
            name: c.name.clone(),
            residual: c.residual.is_finite().then_some(c.residual),
            tol: c.tol,
            pass: c.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub inputs: Vec<InputDigest>,
    pub values: Vec<NamedValue>,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl RunReport {
    pub fn new(tool: impl Into<String>) -> Self {
        RunReport {
            tool: tool.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            inputs: Vec::new(),
            values: Vec::new(),
            checks: Vec::new(),
            pass: true,
        }
    }

    pub fn input(&mut self, name: impl Into<String>, sha256: impl Into<String>) {
        self.inputs.push(InputDigest {
            name: name.into(),
            sha256: sha256.into(),
        });
    }

    pub fn value(&mut self, name: impl Into<String>, value: impl Into<Value>) {
        self.values.push(NamedValue {
            name: name.into(),
            value: value.into(),
        });
    }

    pub fn check(&mut self, c: &Check) {
        self.checks.push(c.into());
        self.pass = self.checks.iter().all(|c| c.pass);
    }

    /// Records a check under a caller-chosen name.
    pub fn check_named(&mut self, name: impl Into<String>, c: &Check) {
        let mut rec = CheckRecord::from(c);
        rec.name = name.into();
        self.checks.push(rec);
        self.pass = self.checks.iter().all(|c| c.pass);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn report_write(report: &RunReport, path: &Path) -> Result<(), IoError> {
    write_json(path, report)
}
