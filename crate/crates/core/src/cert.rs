//! Versioned pass/fail certificates shared by every command.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::caps::Caps;
use crate::error::Result;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub schema: u32,
    pub command: String,
    pub version: String,
    pub seed: u64,
    /// Enumeration caps in force for this run.
    pub caps: Caps,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub artifacts: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("certificate payloads serialize to JSON")
}

impl Certificate {
    pub fn new(command: impl Into<String>, inputs: impl Serialize, seed: u64) -> Certificate {
        Certificate {
            schema: SCHEMA,
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            caps: Caps::from_env(),
            inputs: to_value(&inputs),
            checks: Vec::new(),
            artifacts: Map::new(),
            error: None,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, details: impl Serialize) {
        self.checks.push(Check { name: name.into(), status, details: to_value(&details) });
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, details: impl Serialize) {
        self.push(name, Status::from_bool(ok), details);
    }

    pub fn artifact(&mut self, key: impl Into<String>, value: impl Serialize) {
        self.artifacts.insert(key.into(), to_value(&value));
    }

    pub fn fail_with(&mut self, err: impl std::fmt::Display) {
        self.error = Some(err.to_string());
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }

    /// 1 if any check fails; 2 on error or when nothing passed; else 0.
    pub fn exit_code(&self) -> i32 {
        if self.error.is_some() {
            2
        } else if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else if self.checks.iter().any(|c| c.status == Status::Pass) {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    /// Writes through a temporary file in the target directory and renames.
    pub fn write_atomic(&self, path: &Path) -> Result<()> {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(self.to_json().as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}
