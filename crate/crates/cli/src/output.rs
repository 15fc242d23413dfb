//! Report documents and their human and JSON renderings. All output is
//! ASCII: any other character is escaped.

use ncalc_core::Report;
use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct Section {
    pub title: String,
    pub facts: Vec<(String, Value)>,
    pub report: Report,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Section {
            title: title.into(),
            facts: Vec::new(),
            report: Report::new(),
        }
    }

    pub fn fact(&mut self, name: impl Into<String>, value: impl Into<Value>) {
        self.facts.push((name.into(), value.into()));
    }

    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

#[derive(Clone, Debug)]
pub struct Output {
    pub command: String,
    pub subject: String,
    pub sections: Vec<Section>,
}

impl Output {
    pub fn new(command: &str, subject: impl Into<String>) -> Self {
        Output {
            command: command.to_string(),
            subject: subject.into(),
            sections: Vec::new(),
        }
    }

    pub fn push(&mut self, s: Section) {
        self.sections.push(s);
    }

    pub fn passed(&self) -> bool {
        self.sections.iter().all(Section::passed)
    }

    pub fn to_json(&self) -> Value {
        let sections: Vec<Value> = self
            .sections
            .iter()
            .map(|s| {
                let facts: serde_json::Map<String, Value> = s.facts.iter().cloned().collect();
                json!({
                    "title": s.title,
                    "passed": s.passed(),
                    "facts": facts,
                    "checks": s.report.checks,
                })
            })
            .collect();
        json!({
            "command": self.command,
            "subject": self.subject,
            "passed": self.passed(),
            "sections": sections,
        })
    }

    pub fn render_json(&self) -> String {
        let text = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        escape_json(&text) + "\n"
    }

    pub fn render_human(&self) -> String {
        let mut out = format!("{} {}\n", self.command, self.subject);
        for s in &self.sections {
            let mark = if s.passed() { "pass" } else { "FAIL" };
            out += &format!("\n== {} [{mark}]\n", s.title);
            for (name, value) in &s.facts {
                let v = match value {
                    Value::String(t) => t.clone(),
                    other => other.to_string(),
                };
                out += &format!("  {name}: {v}\n");
            }
            for line in s.report.to_string().lines() {
                out += &format!("  {line}\n");
            }
        }
        let verdict = if self.passed() { "all checks passed" } else { "some checks FAILED" };
        out += &format!("\n{verdict}\n");
        ascii(&out)
    }
}

/// Replaces non-ASCII characters by `\u{..}`.
pub fn ascii(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if c.is_ascii() {
            out.push(c);
        } else {
            out += &format!("\\u{{{:x}}}", c as u32);
        }
    }
    out
}

/// Escapes non-ASCII characters of serialized JSON as `\uXXXX` sequences.
fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if c.is_ascii() {
            out.push(c);
        } else {
            let mut buf = [0u16; 2];
            for unit in c.encode_utf16(&mut buf) {
                out += &format!("\\u{unit:04x}");
            }
        }
    }
    out
}
