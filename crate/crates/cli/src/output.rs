//! Records and their three renderings.
//!
//! JSONL uses the shortest decimal that round-trips each `f64`; table and
//! CSV print 17 significant digits, which also round-trips. Non-finite
//! numbers are written as the strings `inf`, `-inf` and `NaN` in every
//! format so that nothing is silently turned into `null`.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

use crate::args::Format;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// The invocation that produced the record.
    pub command: String,
    pub params: Map<String, Value>,
    pub result: Map<String, Value>,
    pub error_estimate: Value,
    pub elapsed_s: f64,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: Map::new(),
            result: Map::new(),
            error_estimate: Value::Null,
            elapsed_s: 0.0,
        }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn field(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.result.insert(key.to_string(), v.into());
        self
    }

    pub fn error_estimate(mut self, e: f64) -> Self {
        self.error_estimate = num(e);
        self
    }

    fn columns(&self) -> Vec<String> {
        let mut cols: Vec<String> = self.params.keys().cloned().collect();
        cols.extend(self.result.keys().cloned());
        if !self.error_estimate.is_null() {
            cols.push("error_estimate".into());
        }
        cols.push("elapsed_s".into());
        cols
    }

    fn cell(&self, col: &str) -> String {
        let v = match col {
            "error_estimate" if !self.result.contains_key(col) => &self.error_estimate,
            "elapsed_s" if !self.result.contains_key(col) => return sig17(self.elapsed_s),
            _ => match self.params.get(col).or_else(|| self.result.get(col)) {
                Some(v) => v,
                None => return String::new(),
            },
        };
        render_value(v)
    }
}

/// A float as a JSON value, keeping non-finite values as tagged strings.
pub fn num(x: f64) -> Value {
    match Number::from_f64(x) {
        Some(n) => Value::Number(n),
        None => Value::String(non_finite(x).to_string()),
    }
}

fn non_finite(x: f64) -> &'static str {
    if x.is_nan() {
        "NaN"
    } else if x > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

/// 17 significant digits: positional for moderate magnitudes, scientific
/// otherwise.
pub fn sig17(x: f64) -> String {
    if !x.is_finite() {
        return non_finite(x).to_string();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(1) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) if !n.is_f64() => u.to_string(),
            (_, Some(i)) if !n.is_f64() => i.to_string(),
            _ => sig17(n.as_f64().expect("finite float")),
        },
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn write_records(records: &[OutputRecord], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Jsonl => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
            Ok(())
        }
        Format::Csv => {
            let Some(first) = records.first() else { return Ok(()) };
            let cols = first.columns();
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&cols)?;
            for r in records {
                w.write_record(cols.iter().map(|c| r.cell(c)))?;
            }
            w.flush()
        }
        Format::Table => {
            let Some(first) = records.first() else { return Ok(()) };
            writeln!(out, "# {}", first.command)?;
            let cols = first.columns();
            let cells: Vec<Vec<String>> = records.iter().map(|r| cols.iter().map(|c| r.cell(c)).collect()).collect();
            let widths: Vec<usize> = cols
                .iter()
                .enumerate()
                .map(|(i, c)| cells.iter().map(|row| row[i].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
                .collect();
            let line = |row: &[String]| -> String {
                row.iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(&cols))?;
            for row in &cells {
                writeln!(out, "{}", line(row))?;
            }
            Ok(())
        }
    }
}
