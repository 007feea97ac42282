use std::fmt::Write as _;

use parwreath::rank::{RankReport, RankValue};
use parwreath::verify::Check;
use parwreath::Error;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Ok,
    UnsupportedCase,
    BudgetExceeded,
    CheckFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Ok => 0,
            Self::UnsupportedCase => 2,
            Self::BudgetExceeded => 3,
            Self::CheckFailed => 4,
        }
    }

    /// Status for a library error, or `None` when it is an input error.
    pub fn for_error(err: &Error) -> Option<Self> {
        match err {
            Error::UnsupportedCase { .. } => Some(Self::UnsupportedCase),
            Error::BudgetExceeded { .. } | Error::LimitExceeded { .. } => {
                Some(Self::BudgetExceeded)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckOut {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl From<&Check> for CheckOut {
    fn from(c: &Check) -> Self {
        Self {
            name: c.name.clone(),
            expected: c.expected.clone(),
            computed: c.computed.clone(),
            pass: c.pass,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CertificateOut {
    pub search_space: String,
    pub rejected_count: u64,
    pub pruned_count: u64,
    pub per_size: Vec<u64>,
}

#[derive(Debug, Serialize)]
pub struct RankOut {
    /// `null` when no generating set of size at most `max_k` exists.
    pub value: Option<usize>,
    pub method: String,
    pub witness: Vec<String>,
    pub certificate: CertificateOut,
}

impl From<&RankReport> for RankOut {
    fn from(r: &RankReport) -> Self {
        let mut witness: Vec<String> = r.fixed.elements().iter().map(|f| f.to_string()).collect();
        witness.extend(r.witness.elements().iter().map(|f| f.to_string()));
        Self {
            value: match r.value {
                RankValue::Exact(v) => Some(v),
                RankValue::Exceeds(_) => None,
            },
            method: r.method.to_string(),
            witness,
            certificate: CertificateOut {
                search_space: r.certificate.search_space.clone(),
                rejected_count: r.certificate.rejected_count,
                pruned_count: r.certificate.pruned_count,
                per_size: r.certificate.per_size.clone(),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub status: Status,
    pub checks: Vec<CheckOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<RankOut>,
    pub results: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: &str, params: Map<String, Value>) -> Self {
        Self {
            command: command.to_owned(),
            params,
            status: Status::Ok,
            checks: Vec::new(),
            rank: None,
            results: Map::new(),
            message: None,
            elapsed_ms: 0,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_owned(), value.into());
    }

    pub fn push_check(&mut self, check: &Check) {
        self.checks.push(check.into());
    }

    /// Marks the report failed if any check failed and the status is still OK.
    pub fn settle(&mut self) {
        if self.status == Status::Ok && self.checks.iter().any(|c| !c.pass) {
            self.status = Status::CheckFailed;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (k, v) in &self.params {
            let _ = writeln!(out, "  {k} = {}", plain(v));
        }
        let _ = writeln!(out, "status: {}", status_name(self.status));
        if let Some(msg) = &self.message {
            let _ = writeln!(out, "message: {msg}");
        }
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            let _ = writeln!(
                out,
                "[{mark}] {}: expected {}, computed {}",
                c.name, c.expected, c.computed
            );
        }
        if let Some(rank) = &self.rank {
            match rank.value {
                Some(v) => {
                    let _ = writeln!(out, "rank: {v} ({})", rank.method);
                }
                None => {
                    let _ = writeln!(
                        out,
                        "rank: not found within the size bound ({})",
                        rank.method
                    );
                }
            }
            for w in &rank.witness {
                let _ = writeln!(out, "  witness: {w}");
            }
            let c = &rank.certificate;
            let _ = writeln!(
                out,
                "certificate: {} rejected over {}",
                c.rejected_count, c.search_space
            );
            let _ = writeln!(
                out,
                "  pruned: {}, per size: {:?}",
                c.pruned_count, c.per_size
            );
        }
        for (k, v) in &self.results {
            let _ = writeln!(out, "{k}: {}", plain(v));
        }
        let _ = writeln!(out, "elapsed: {} ms", self.elapsed_ms);
        out
    }
}

fn status_name(status: Status) -> String {
    serde_json::to_value(status)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
