//! Structured command output, rendered as text or JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub key: String,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub title: String,
    pub entries: Vec<Entry>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Section { title: title.into(), entries: Vec::new() }
    }

    pub fn info(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.entries.push(Entry { key: key.into(), value: value.into(), status: None });
    }

    pub fn check(&mut self, key: impl Into<String>, value: impl Into<String>, ok: bool) {
        let status = Some(if ok { Status::Pass } else { Status::Fail });
        self.entries.push(Entry { key: key.into(), value: value.into(), status });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub status: Status,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &str, input: &str) -> Self {
        Report { command: command.into(), input: input.into(), status: Status::Pass, sections: Vec::new() }
    }

    /// Adds a section; any failed entry fails the report.
    pub fn push(&mut self, section: Section) {
        if section.entries.iter().any(|e| e.status == Some(Status::Fail)) {
            self.status = Status::Fail;
        }
        self.sections.push(section);
    }

    pub fn fail(&mut self) {
        self.status = Status::Fail;
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "carnot {} {}", self.command, self.input);
        for s in &self.sections {
            let _ = writeln!(out, "\n== {} ==", s.title);
            let tag = |e: &Entry| match e.status {
                Some(Status::Pass) => "[PASS] ",
                Some(Status::Fail) => "[FAIL] ",
                None => "",
            };
            let label = |e: &Entry| format!("{}{}", tag(e), e.key);
            let width = s.entries.iter().map(|e| label(e).chars().count()).max().unwrap_or(0);
            for e in &s.entries {
                let l = label(e);
                let pad = " ".repeat(width - l.chars().count());
                let mut lines = e.value.lines();
                let _ = writeln!(out, "  {l}{pad} : {}", lines.next().unwrap_or(""));
                for line in lines {
                    let _ = writeln!(out, "  {}   {line}", " ".repeat(width));
                }
            }
        }
        let _ = writeln!(out, "\nstatus: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}
