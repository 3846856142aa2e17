//! Verdict records and their JSON form.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Error,
}

/// How much weight a verdict carries for the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// A proved statement; a failure is a bug.
    Theorem,
    /// A case outside the theorem's hypotheses, run for information.
    Informational,
    /// Evidence for a conjecture; never fails a suite.
    Evidence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub task: String,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    pub level: Level,
    pub residue: Option<String>,
    pub expected: Option<String>,
    pub actual: Option<String>,
    pub notes: String,
    pub timing_ms: u64,
}

/// The serialized record; field order is the schema order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub task: String,
    pub params: BTreeMap<String, i64>,
    pub status: String,
    pub residue: Option<String>,
    pub expected: Option<String>,
    pub actual: Option<String>,
    pub notes: String,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(task: impl Into<String>, params: &[(&str, i64)], level: Level) -> Self {
        Report {
            task: task.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            status: Status::Holds,
            level,
            residue: None,
            expected: None,
            actual: None,
            notes: String::new(),
            timing_ms: 0,
        }
    }

    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    /// True when this report should make a suite fail.
    pub fn is_theorem_failure(&self) -> bool {
        self.level == Level::Theorem && self.status != Status::Holds
    }

    pub fn note(&mut self, text: impl AsRef<str>) {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(text.as_ref());
    }

    pub fn fail_with(&mut self, err: &crate::error::Error) {
        self.status = Status::Error;
        self.note(err.to_string());
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.timing_ms = start.elapsed().as_millis() as u64;
        self
    }

    /// Evidence-level outcomes serialize as `"report"` with the verdict in the notes.
    pub fn to_record(&self) -> ReportRecord {
        let status = match (self.level, self.status) {
            (Level::Evidence, Status::Error) => "error".to_string(),
            (Level::Evidence, _) => "report".to_string(),
            (_, s) => s.to_string(),
        };
        let notes = if self.level == Level::Evidence && self.status != Status::Error {
            let verdict = format!("verdict: {}", self.status);
            if self.notes.is_empty() { verdict } else { format!("{verdict}; {}", self.notes) }
        } else {
            self.notes.clone()
        };
        ReportRecord {
            task: self.task.clone(),
            params: self.params.clone(),
            status,
            residue: self.residue.clone(),
            expected: self.expected.clone(),
            actual: self.actual.clone(),
            notes,
            timing_ms: self.timing_ms,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Error => "error",
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let rec = self.to_record();
        write!(f, "{} [{}] {} ({} ms)", self.task, params.join(" "), rec.status, self.timing_ms)?;
        if let Some(r) = &self.residue {
            if r != "0" {
                write!(f, "\n  residue: {r}")?;
            }
        }
        if let (Some(e), Some(a)) = (&self.expected, &self.actual) {
            write!(f, "\n  expected: {e}  actual: {a}")?;
        }
        if !rec.notes.is_empty() {
            write!(f, "\n  {}", rec.notes)?;
        }
        Ok(())
    }
}

/// JSON array of records, one per report, in the given order.
pub fn to_json(reports: &[Report]) -> String {
    let records: Vec<ReportRecord> = reports.iter().map(Report::to_record).collect();
    serde_json::to_string_pretty(&records).expect("records serialize")
}
