use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One summary line per section.
    Text,
    /// `[section]` headers followed by `key: value` lines.
    Kv,
}

/// A titled group of fields with a one-line human summary.
#[derive(Clone, Debug)]
pub struct Section {
    pub name: String,
    pub summary: String,
    pub fields: Vec<(String, String)>,
    /// Extra lines printed under the summary in text mode.
    pub detail: Vec<String>,
}

impl Section {
    pub fn new(name: &str, summary: impl Into<String>) -> Self {
        Section {
            name: name.into(),
            summary: summary.into(),
            fields: Vec::new(),
            detail: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn detail(mut self, line: impl Into<String>) -> Self {
        self.detail.push(line.into());
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub sections: Vec<Section>,
    /// Set when a property check failed; maps to exit code 2.
    pub failed: bool,
}

impl Report {
    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn fail(&mut self, section: Section) {
        self.failed = true;
        self.sections.push(section);
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for s in &self.sections {
            match format {
                Format::Text => {
                    let _ = writeln!(out, "{}: {}", s.name, s.summary);
                    for line in &s.detail {
                        let _ = writeln!(out, "  {line}");
                    }
                }
                Format::Kv => {
                    let _ = writeln!(out, "[{}]", s.name);
                    let _ = writeln!(out, "summary: {}", s.summary);
                    for (k, v) in &s.fields {
                        let _ = writeln!(out, "{k}: {v}");
                    }
                }
            }
        }
        out
    }
}
