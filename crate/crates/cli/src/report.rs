//! Machine-readable run reports: command, input digests, result payload,
//! witnesses and timing. The process exits 0 iff no check failed.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub result: Value,
    pub witnesses: Vec<Value>,
    pub timing_ms: u128,
    pub ok: bool,
    #[serde(skip)]
    started: Instant,
    #[serde(skip)]
    text: Option<String>,
}

#[derive(Serialize)]
pub struct InputDigest {
    pub path: String,
    pub fnv1a64: String,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            inputs: Vec::new(),
            result: Value::Null,
            witnesses: Vec::new(),
            timing_ms: 0,
            ok: true,
            started: Instant::now(),
            text: None,
        }
    }

    pub fn record_input(&mut self, path: &Path) {
        let digest = std::fs::read(path).map(|bytes| fnv1a64(&bytes)).unwrap_or(0);
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            fnv1a64: format!("{digest:016x}"),
        });
    }

    pub fn set_result(&mut self, result: Value) {
        self.result = result;
    }

    /// Raw text output (DOT) instead of the JSON report body.
    pub fn set_text_result(&mut self, text: String) {
        self.text = Some(text);
    }

    pub fn emit(mut self, out: Option<&Path>) {
        self.timing_ms = self.started.elapsed().as_millis();
        let body = match &self.text {
            Some(text) => text.clone(),
            None => serde_json::to_string_pretty(&self).expect("report serializes") + "\n",
        };
        match out {
            Some(path) => std::fs::write(path, body).expect("write report"),
            None => print!("{body}"),
        }
    }
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

impl RunReport {
    pub fn record_stdin(&mut self) {
        self.inputs.push(InputDigest {
            path: "<stdin>".into(),
            fnv1a64: "-".into(),
        });
    }
}
