//! Plot-ready output records: one schema for every command, serialized to
//! JSON (lossless round-trip) or CSV (17-significant-digit floats, complex
//! values as paired `_re`/`_im` columns).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OutputError {
    #[error("serialization failed: {0}")]
    Serialize(String),
    #[error("parse failed: {0}")]
    Parse(String),
    #[error("row {row} has {got} cells, expected {expected}")]
    RaggedRow {
        row: usize,
        got: usize,
        expected: usize,
    },
}

/// Complex number as an explicit pair; no lossy magnitude-only output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Cx {
    fn from(z: Complex64) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

impl From<Cx> for Complex64 {
    fn from(c: Cx) -> Self {
        Complex64::new(c.re, c.im)
    }
}

/// One cell of a result table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Real(f64),
    Complex(Cx),
    Text(String),
}

impl From<Complex64> for Value {
    fn from(z: Complex64) -> Self {
        Value::Complex(z.into())
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, serde_json::Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub diagnostics: BTreeMap<String, serde_json::Value>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs: BTreeMap::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            diagnostics: BTreeMap::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<serde_json::Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn diagnostic(
        &mut self,
        key: &str,
        value: impl Into<serde_json::Value>,
    ) -> &mut Self {
        self.diagnostics.insert(key.to_string(), value.into());
        self
    }

    fn check_shape(&self) -> Result<(), OutputError> {
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.columns.len() {
                return Err(OutputError::RaggedRow {
                    row: i,
                    got: row.len(),
                    expected: self.columns.len(),
                });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String, OutputError> {
        self.check_shape()?;
        serde_json::to_string_pretty(self).map_err(|e| OutputError::Serialize(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, OutputError> {
        let rec: OutputRecord =
            serde_json::from_str(text).map_err(|e| OutputError::Parse(e.to_string()))?;
        if rec.schema_version != SCHEMA_VERSION {
            return Err(OutputError::Parse(format!(
                "unsupported schema_version {:?}",
                rec.schema_version
            )));
        }
        rec.check_shape()?;
        Ok(rec)
    }

    /// Header row plus data rows; `.` decimal, `,` separator, complex
    /// columns expanded into `<name>_re`, `<name>_im`.
    pub fn to_csv(&self) -> Result<String, OutputError> {
        self.check_shape()?;
        let mut header: Vec<String> = Vec::new();
        for (j, name) in self.columns.iter().enumerate() {
            let complex = self
                .rows
                .first()
                .map(|r| matches!(r[j], Value::Complex(_)))
                .unwrap_or(false);
            if complex {
                header.push(format!("{name}_re"));
                header.push(format!("{name}_im"));
            } else {
                header.push(name.clone());
            }
        }
        let mut out = header.join(",");
        out.push('\n');
        for row in &self.rows {
            let mut cells: Vec<String> = Vec::new();
            for v in row {
                match v {
                    Value::Bool(b) => cells.push(b.to_string()),
                    Value::Int(i) => cells.push(i.to_string()),
                    Value::Real(x) => cells.push(fmt_f64(*x)),
                    Value::Complex(c) => {
                        cells.push(fmt_f64(c.re));
                        cells.push(fmt_f64(c.im));
                    }
                    Value::Text(t) => cells.push(t.replace(',', ";")),
                }
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        Ok(out)
    }
}

/// 17 significant digits: enough for an exact f64 round-trip.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
