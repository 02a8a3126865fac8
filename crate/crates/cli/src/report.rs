//! Reports are a header naming the check, provenance lines, and a
//! machine-readable `key: value` section between `BEGIN-RESULT` and
//! `END-RESULT`.

use std::fmt::Write;

pub struct Report {
    verb: &'static str,
    provenance: Vec<String>,
    fields: Vec<(String, String)>,
}

impl Report {
    pub fn new(verb: &'static str) -> Self {
        Report {
            verb,
            provenance: Vec::new(),
            fields: Vec::new(),
        }
    }

    pub fn provenance(&mut self, line: impl Into<String>) -> &mut Self {
        self.provenance.push(line.into());
        self
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn render(&self) -> String {
        self.render_with_prefix("")
    }

    /// Every line prefixed, e.g. with `# ` to embed the report as comments.
    pub fn render_with_prefix(&self, prefix: &str) -> String {
        let mut out = String::new();
        writeln!(out, "{prefix}tropval {}", self.verb).unwrap();
        for p in &self.provenance {
            writeln!(out, "{prefix}provenance: {p}").unwrap();
        }
        writeln!(out, "{prefix}BEGIN-RESULT").unwrap();
        for (k, v) in &self.fields {
            writeln!(out, "{prefix}{k}: {v}").unwrap();
        }
        writeln!(out, "{prefix}END-RESULT").unwrap();
        out
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
