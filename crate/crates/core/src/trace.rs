//! Line-by-line record of a desingularization run.

use std::fmt;
use std::time::Duration;

use gnd_algebra::{Ideal, PolyMatrix, Polynomial};
use serde::{Deserialize, Serialize};

use crate::error::{GndError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum TraceValue {
    Int(i64),
    Bool(bool),
    Poly(String),
    Ideal(Vec<String>),
    Matrix(Vec<Vec<String>>),
    Text(String),
}

impl TraceValue {
    pub fn poly(p: &Polynomial) -> Self {
        TraceValue::Poly(p.to_string())
    }

    pub fn polys(ps: &[Polynomial]) -> Self {
        TraceValue::Ideal(ps.iter().map(|p| p.to_string()).collect())
    }

    pub fn ideal(i: &Ideal) -> Self {
        Self::polys(i.gens())
    }

    pub fn matrix(m: &PolyMatrix) -> Self {
        TraceValue::Matrix(
            (0..m.rows())
                .map(|i| m.row(i).iter().map(|p| p.to_string()).collect())
                .collect(),
        )
    }
}

impl fmt::Display for TraceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceValue::Int(n) => write!(f, "{n}"),
            TraceValue::Bool(b) => write!(f, "{b}"),
            TraceValue::Poly(p) | TraceValue::Text(p) => write!(f, "{p}"),
            TraceValue::Ideal(g) => write!(f, "({})", g.join(", ")),
            TraceValue::Matrix(rows) => {
                let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                write!(f, "[{}]", rows.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: TraceValue,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceRecord {
    pub line: u32,
    pub label: String,
    pub values: Vec<NamedValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Timing is not part of a record's identity.
impl PartialEq for TraceRecord {
    fn eq(&self, other: &Self) -> bool {
        self.line == other.line
            && self.label == other.label
            && self.values == other.values
            && self.note == other.note
    }
}

impl TraceRecord {
    pub fn new(line: u32, label: &str) -> Self {
        TraceRecord {
            line,
            label: label.to_string(),
            values: Vec::new(),
            note: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn value(mut self, name: &str, value: TraceValue) -> Self {
        self.values.push(NamedValue {
            name: name.to_string(),
            value,
        });
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn get(&self, name: &str) -> Option<&TraceValue> {
        self.values.iter().find(|v| v.name == name).map(|v| &v.value)
    }
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .values
            .iter()
            .map(|v| format!("{} = {}", v.name, v.value))
            .collect();
        if let Some(n) = &self.note {
            parts.push(n.clone());
        }
        write!(f, "{}. {}", self.line, parts.join(", "))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trace {
    pub records: Vec<TraceRecord>,
}

impl Trace {
    pub fn push(&mut self, record: TraceRecord) {
        self.records.push(record);
    }

    /// The last record for an algorithm line.
    pub fn line(&self, line: u32) -> Option<&TraceRecord> {
        self.records.iter().rev().find(|r| r.line == line)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    /// One JSON object per line.
    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("trace records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_machine(src: &str) -> Result<Trace> {
        let mut records = Vec::new();
        for (i, line) in src.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let r: TraceRecord = serde_json::from_str(line).map_err(|e| GndError::Parse {
                line: i + 1,
                col: e.column(),
                msg: e.to_string(),
            })?;
            records.push(r);
        }
        Ok(Trace { records })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_line_format() {
        let r = TraceRecord::new(11, "exponent").value("e", TraceValue::Int(1));
        assert_eq!(r.to_string(), "11. e = 1");
        let r = TraceRecord::new(4, "symmetric_algebra")
            .value("dim(A/H∩A)", TraceValue::Int(0))
            .note("is not true");
        assert_eq!(r.to_string(), "4. dim(A/H∩A) = 0, is not true");
    }

    #[test]
    fn machine_round_trip_ignores_timing() {
        let mut t = Trace::default();
        let mut r = TraceRecord::new(6, "completed_jacobian")
            .value("H", TraceValue::Matrix(vec![vec!["x2".into(), "x1".into()], vec!["-1".into(), "1".into()]]))
            .value("seed", TraceValue::Int(7));
        r.elapsed = Duration::from_millis(12);
        t.push(r);
        t.push(TraceRecord::new(12, "precision_check").value("ok", TraceValue::Bool(true)));
        let back = Trace::from_machine(&t.to_machine()).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_text(), t.to_text());
    }
}
