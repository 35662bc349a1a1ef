use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

/// Outcome of one command. Contains no timestamps or timings, so identical
/// inputs give identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub input_digest: String,
    pub results: BTreeMap<String, Value>,
    pub verdicts: BTreeMap<String, bool>,
}

impl RunReport {
    /// `inputs` is every byte that determines the run: documents and
    /// normalized arguments.
    pub fn new(command: &str, inputs: &[&[u8]]) -> Self {
        let mut h = Sha256::new();
        for part in inputs {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part);
        }
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest: format!("sha256:{:x}", h.finalize()),
            results: BTreeMap::new(),
            verdicts: BTreeMap::new(),
        }
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn verdict(&mut self, key: &str, ok: bool) {
        self.verdicts.insert(key.to_string(), ok);
    }

    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                writeln!(out, "command: {}", self.command).unwrap();
                writeln!(out, "version: {}", self.version).unwrap();
                writeln!(out, "input: {}", self.input_digest).unwrap();
                for (k, v) in &self.results {
                    writeln!(out, "{k} = {v}").unwrap();
                }
                for (k, v) in &self.verdicts {
                    writeln!(out, "[{}] {k}", if *v { "pass" } else { "FAIL" }).unwrap();
                }
                out
            }
        }
    }
}
