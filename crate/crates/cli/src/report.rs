//! Line-oriented run reports.

use std::fmt::Write as _;
use std::process::ExitCode;

use sha2::{Digest, Sha256};

/// Exit status of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Input = 2,
    Guard = 3,
    VerifyFailed = 4,
    Premise = 5,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> ExitCode {
        ExitCode::from(s as u8)
    }
}

pub struct Report {
    command: String,
    digest: String,
    seed: Option<u64>,
    results: Vec<(String, String)>,
    pub status: Status,
}

impl Report {
    /// `inputs` are hashed in order, each prefixed by its length.
    pub fn new(command: String, inputs: &[&[u8]], seed: Option<u64>) -> Report {
        let mut h = Sha256::new();
        for i in inputs {
            h.update((i.len() as u64).to_le_bytes());
            h.update(i);
        }
        let digest = h.finalize().iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        Report { command, digest, seed, results: Vec::new(), status: Status::Ok }
    }

    pub fn put(&mut self, key: &str, value: impl ToString) {
        self.results.push((key.to_string(), value.to_string()));
    }

    pub fn fail(&mut self, status: Status, message: impl ToString) {
        self.status = status;
        self.put("error", message);
    }

    /// `key: value` lines; multi-line values follow their key indented.
    pub fn render(&self, wall_ms: u128) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: &str| {
            if v.contains('\n') {
                let _ = writeln!(out, "{k}:");
                for l in v.lines() {
                    let _ = writeln!(out, "  {l}");
                }
            } else {
                let _ = writeln!(out, "{k}: {v}");
            }
        };
        line("command", &self.command);
        line("inputs-sha256", &self.digest);
        if let Some(s) = self.seed {
            line("seed", &s.to_string());
        }
        for (k, v) in &self.results {
            line(k, v);
        }
        line("exit", &(self.status as u8).to_string());
        line("wall-time-ms", &wall_ms.to_string());
        out
    }

    pub fn to_json(&self, wall_ms: u128) -> String {
        let mut results = serde_json::Map::new();
        for (k, v) in &self.results {
            let v = serde_json::Value::String(v.clone());
            match results.get_mut(k) {
                Some(serde_json::Value::Array(a)) => a.push(v),
                Some(old) => *old = serde_json::Value::Array(vec![old.take(), v]),
                None => {
                    results.insert(k.clone(), v);
                }
            }
        }
        let doc = serde_json::json!({
            "command": self.command,
            "inputs_sha256": self.digest,
            "seed": self.seed,
            "results": results,
            "exit": self.status as u8,
            "wall_time_ms": wall_ms as u64,
        });
        serde_json::to_string_pretty(&doc).expect("plain JSON") + "\n"
    }
}
