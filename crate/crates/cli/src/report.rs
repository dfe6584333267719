//! The JSON report written by every command. Everything outside `timing`
//! depends only on the command line and the input bytes.

use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Version tag of the report layout; bump when field names change.
pub const SCHEMA: &str = "divcss-report/1";

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub command: CommandEcho,
    pub inputs: Vec<Digest256>,
    pub checks: Vec<Check>,
    pub outputs: Vec<Digest256>,
    pub outcome: Outcome,
    pub timing: Timing,
}

#[derive(Debug, Serialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Digest256 {
    pub name: String,
    pub sha256: String,
}

impl Digest256 {
    pub fn of(name: impl Into<String>, bytes: &[u8]) -> Self {
        Self {
            name: name.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// One named result. Only `required` checks decide the exit code.
#[derive(Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub required: bool,
    pub verdict: bool,
    pub summary: String,
    pub data: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    UsageError,
    ResourceCap,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::UsageError => 2,
            Status::ResourceCap => 3,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Outcome {
    pub status: Status,
    pub exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Default, Serialize)]
pub struct Timing {
    pub total_ms: f64,
    pub checks: Vec<CheckTime>,
}

#[derive(Debug, Serialize)]
pub struct CheckTime {
    pub id: String,
    pub ms: f64,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Collects checks and timings while a command runs.
pub struct Recorder {
    pub inputs: Vec<Digest256>,
    pub outputs: Vec<Digest256>,
    checks: Vec<Check>,
    times: Vec<CheckTime>,
    /// Forced status, for outcomes that are not a failed check.
    status: Option<(Status, String)>,
}

impl Recorder {
    pub fn new() -> Self {
        Self {
            inputs: Vec::new(),
            outputs: Vec::new(),
            checks: Vec::new(),
            times: Vec::new(),
            status: None,
        }
    }

    /// Run `f`, timing it, and record its result.
    pub fn run<T>(&mut self, id: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.times.push(CheckTime {
            id: id.to_string(),
            ms: ms(start.elapsed()),
        });
        out
    }

    pub fn push(&mut self, id: &str, required: bool, verdict: bool, summary: impl Into<String>, data: impl Serialize) {
        self.checks.push(Check {
            id: id.to_string(),
            required,
            verdict,
            summary: summary.into(),
            data: serde_json::to_value(data).expect("report data serializes"),
        });
    }

    pub fn set_status(&mut self, status: Status, message: impl Into<String>) {
        self.status = Some((status, message.into()));
    }

    pub fn finish(self, command: CommandEcho, started: Instant) -> ReportDocument {
        let (status, message) = match self.status {
            Some((s, m)) => (s, Some(m)),
            None if self.checks.iter().any(|c| c.required && !c.verdict) => (Status::Fail, None),
            None => (Status::Pass, None),
        };
        ReportDocument {
            schema: SCHEMA,
            command,
            inputs: self.inputs,
            checks: self.checks,
            outputs: self.outputs,
            outcome: Outcome {
                status,
                exit_code: status.exit_code(),
                message,
            },
            timing: Timing {
                total_ms: ms(started.elapsed()),
                checks: self.times,
            },
        }
    }
}
