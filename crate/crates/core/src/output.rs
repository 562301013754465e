//! Dataset assembly and serialization.
//!
//! Every dataset embeds its full resolved parameter set; numbers are emitted
//! in scientific notation with 12 significant digits in both CSV and JSON,
//! so the two formats of one run carry identical numeric values. Absent
//! values (a COP outside its defining regime) are an empty CSV field and a
//! JSON null.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Scientific notation with 12 significant digits.
pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

/// One cell of a dataset row.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Number(f64),
    Text(String),
    Absent,
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Number(x)
    }
}

impl From<Option<f64>> for Field {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Field::Absent, Field::Number)
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_owned())
    }
}

impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Text(s)
    }
}

/// Output format of a dataset or report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::domain(format!(
                "unknown output format {other:?} (expected csv or json)"
            ))),
        }
    }
}

/// A rectangular result table plus the parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub parameters: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Field>>,
}

impl Dataset {
    pub fn new(columns: &[&str]) -> Self {
        Dataset {
            parameters: Vec::new(),
            columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn parameter(&mut self, key: impl Into<String>, value: impl ToString) {
        self.parameters.push((key.into(), value.to_string()));
    }

    pub fn parameters_from(&mut self, list: Vec<(String, String)>) {
        self.parameters.extend(list);
    }

    pub fn push_row(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.parameters {
            let _ = writeln!(out, "# {key} = {value}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let rendered: Vec<String> = row
                .iter()
                .map(|field| match field {
                    Field::Number(x) => format_number(*x),
                    Field::Text(s) => s.clone(),
                    Field::Absent => String::new(),
                })
                .collect();
            let _ = writeln!(out, "{}", rendered.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"parameters\": {\n");
        for (i, (key, value)) in self.parameters.iter().enumerate() {
            let comma = if i + 1 < self.parameters.len() {
                ","
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "    {}: {}{comma}",
                json_string(key),
                json_string(value)
            );
        }
        out.push_str("  },\n  \"columns\": [");
        for (i, column) in self.columns.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&json_string(column));
        }
        out.push_str("],\n  \"rows\": [\n");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str("    [");
            for (j, field) in row.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                match field {
                    Field::Number(x) => out.push_str(&format_number(*x)),
                    Field::Text(s) => out.push_str(&json_string(s)),
                    Field::Absent => out.push_str("null"),
                }
            }
            let comma = if i + 1 < self.rows.len() { "," } else { "" };
            let _ = writeln!(out, "]{comma}");
        }
        out.push_str("  ]\n}\n");
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
