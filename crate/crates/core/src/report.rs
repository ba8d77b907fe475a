//! Structured pass/fail evidence shared by the certifiers and suites.

use std::fmt;
use std::io::{self, Write};

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Non-asserting data (counts, configuration, recorded search outcomes).
    Info,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Info => "info",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entry {
    pub name: String,
    pub verdict: Verdict,
    /// Frame (or frame class) the entry refers to, if any.
    pub frame: Value,
    /// Counterexample on failure, evidence otherwise.
    pub witness: Value,
}

/// Outcome of an exhaustive validity check, with the first falsifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity<W> {
    Valid,
    Invalid(W),
}

impl<W> Validity<W> {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Validity::Valid => None,
            Validity::Invalid(w) => Some(w),
        }
    }
}

/// One JSON line of a report.
#[derive(Serialize)]
struct Line<'a> {
    suite: &'a str,
    frame: &'a Value,
    entry: &'a str,
    verdict: Verdict,
    witness: &'a Value,
}

/// An ordered list of named law checks. The report passes iff no entry fails.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateReport {
    pub suite: String,
    pub entries: Vec<Entry>,
}

impl CertificateReport {
    pub fn new(suite: impl Into<String>) -> Self {
        CertificateReport {
            suite: suite.into(),
            entries: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        verdict: Verdict,
        frame: Value,
        witness: Value,
    ) {
        self.entries.push(Entry {
            name: name.into(),
            verdict,
            frame,
            witness,
        });
    }

    /// Records a law: passes when `counterexample` is `None`.
    pub fn law(&mut self, name: impl Into<String>, counterexample: Option<Value>) {
        match counterexample {
            None => self.push(name, Verdict::Pass, Value::Null, Value::Null),
            Some(w) => self.push(name, Verdict::Fail, Value::Null, w),
        }
    }

    pub fn info(&mut self, name: impl Into<String>, frame: Value, data: Value) {
        self.push(name, Verdict::Info, frame, data);
    }

    pub fn extend(&mut self, other: CertificateReport) {
        self.entries.extend(other.entries);
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.verdict != Verdict::Fail)
    }

    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.verdict == Verdict::Fail)
    }

    pub fn write_json_lines<W: Write>(&self, out: &mut W) -> io::Result<()> {
        for e in &self.entries {
            let line = Line {
                suite: &self.suite,
                frame: &e.frame,
                entry: &e.name,
                verdict: e.verdict,
                witness: &e.witness,
            };
            serde_json::to_writer(&mut *out, &line)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_json_lines(&self) -> String {
        let mut buf = Vec::new();
        self.write_json_lines(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("serde_json emits UTF-8")
    }

    pub fn write_text<W: Write>(&self, out: &mut W) -> io::Result<()> {
        for e in &self.entries {
            write!(out, "{}: {}", e.name, e.verdict)?;
            if !e.frame.is_null() {
                write!(out, " frame={}", e.frame)?;
            }
            if !e.witness.is_null() {
                write!(out, " {}", e.witness)?;
            }
            writeln!(out)?;
        }
        writeln!(
            out,
            "{}: {}",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}
