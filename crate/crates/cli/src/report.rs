use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Outcome class of a command, mapped one-to-one onto exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Well-formed input failing a mathematical precondition.
    Refused,
    /// A property suite found a disagreement.
    SuiteFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Refused => 2,
            Status::SuiteFailed => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Field(String, String),
    /// Printed verbatim, e.g. utility lines `a = 2/1`.
    Raw(String),
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub digests: Vec<String>,
    pub entries: Vec<Entry>,
    pub status: Status,
    pub elapsed: Duration,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            digests: Vec::new(),
            entries: Vec::new(),
            status: Status::Ok,
            elapsed: Duration::ZERO,
        }
    }

    pub fn input(&mut self, bytes: &[u8]) {
        self.digests.push(digest(bytes));
    }

    pub fn field(&mut self, key: &str, value: impl ToString) {
        self.entries.push(Entry::Field(key.to_string(), value.to_string()));
    }

    pub fn raw(&mut self, line: impl Into<String>) {
        self.entries.push(Entry::Raw(line.into()));
    }

    /// First value recorded under `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find_map(|e| match e {
            Entry::Field(k, v) if k == key => Some(v.as_str()),
            _ => None,
        })
    }

    pub fn refuse(&mut self, reason: impl ToString) {
        self.field("REFUSED", reason);
        self.status = Status::Refused;
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "COMMAND {}", self.command);
        for d in &self.digests {
            let _ = writeln!(out, "INPUT_DIGEST {d}");
        }
        for e in &self.entries {
            match e {
                Entry::Field(k, v) if v.is_empty() => {
                    let _ = writeln!(out, "{k}");
                }
                Entry::Field(k, v) => {
                    let _ = writeln!(out, "{k} {v}");
                }
                Entry::Raw(line) => {
                    let _ = writeln!(out, "{line}");
                }
            }
        }
        let _ = writeln!(out, "ELAPSED_MS {:.3}", self.elapsed.as_secs_f64() * 1e3);
        out
    }

    /// Fields become a map (repeated keys collect into arrays); raw lines are
    /// kept in order under `"raw"`.
    pub fn to_json(&self) -> Value {
        let mut fields = Map::new();
        let mut raw = Vec::new();
        for e in &self.entries {
            match e {
                Entry::Field(k, v) => {
                    let v = Value::String(v.clone());
                    match fields.get_mut(k) {
                        None => {
                            fields.insert(k.clone(), v);
                        }
                        Some(Value::Array(items)) => items.push(v),
                        Some(existing) => {
                            let first = existing.take();
                            *existing = Value::Array(vec![first, v]);
                        }
                    }
                }
                Entry::Raw(line) => raw.push(Value::String(line.clone())),
            }
        }
        json!({
            "command": self.command,
            "input_digests": self.digests,
            "fields": fields,
            "raw": raw,
            "exit_code": self.status.exit_code(),
            "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
        })
    }
}
