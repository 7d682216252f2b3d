//! Sweep artifacts: an ordered column list plus homogeneous rows, written
//! as RFC-4180 CSV (CRLF, minimal quoting) or as a JSON array of objects.
//! Rationals are serialized as `p/q` strings upstream of this module;
//! floats print as their shortest round-trip decimals.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{Map, Value};

#[derive(Debug, Clone)]
pub struct Sweep {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Sweep {
    pub fn new(columns: &[&str]) -> Sweep {
        Sweep {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    /// Writes to `path`, inferring the format from the extension, or prints
    /// CSV to stdout when no path is given.
    pub fn emit(&self, path: Option<&Path>) -> Result<()> {
        match path {
            None => {
                print!("{}", self.to_csv());
                Ok(())
            }
            Some(p) => {
                let body = match format_of(p)? {
                    Format::Csv => self.to_csv(),
                    Format::Json => self.to_json()?,
                };
                fs::write(p, body).with_context(|| format!("writing {}", p.display()))
            }
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        push_record(&mut out, self.columns.iter().map(String::as_str));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(value_to_cell).collect();
            push_record(&mut out, cells.iter().map(String::as_str));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (c, v) in self.columns.iter().zip(row) {
                    obj.insert(c.clone(), v.clone());
                }
                Value::Object(obj)
            })
            .collect();
        let mut body = serde_json::to_string_pretty(&records)?;
        body.push('\n');
        Ok(body)
    }
}

enum Format {
    Csv,
    Json,
}

fn format_of(path: &Path) -> Result<Format> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok(Format::Csv),
        Some("json") => Ok(Format::Json),
        other => bail!(
            "cannot infer output format of {} (extension {:?}); use .csv or .json",
            path.display(),
            other.unwrap_or("")
        ),
    }
}

fn value_to_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn push_record<'a>(out: &mut String, fields: impl Iterator<Item = &'a str>) {
    let mut first = true;
    for field in fields {
        if !first {
            out.push(',');
        }
        first = false;
        if field.contains([',', '"', '\n', '\r']) {
            out.push('"');
            out.push_str(&field.replace('"', "\"\""));
            out.push('"');
        } else {
            out.push_str(field);
        }
    }
    out.push_str("\r\n");
}

/// Converts a sweep artifact between the two formats, preserving column
/// order and cell contents. CSV cells re-enter JSON as strings.
pub fn convert(input: &Path, output: &Path) -> Result<()> {
    let body = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let sweep = match format_of(input)? {
        Format::Csv => parse_csv(&body)?,
        Format::Json => parse_json(&body)?,
    };
    sweep.emit(Some(output))
}

fn parse_json(body: &str) -> Result<Sweep> {
    let records: Vec<Map<String, Value>> =
        serde_json::from_str(body).context("expected a JSON array of flat objects")?;
    let mut columns: Vec<String> = Vec::new();
    for rec in &records {
        for key in rec.keys() {
            if !columns.iter().any(|c| c == key) {
                columns.push(key.clone());
            }
        }
    }
    let rows = records
        .iter()
        .map(|rec| {
            columns
                .iter()
                .map(|c| rec.get(c).cloned().unwrap_or(Value::Null))
                .collect()
        })
        .collect();
    Ok(Sweep { columns, rows })
}

fn parse_csv(body: &str) -> Result<Sweep> {
    let mut records = csv_records(body)?;
    if records.is_empty() {
        bail!("CSV input has no header record");
    }
    let columns = records.remove(0);
    for (i, rec) in records.iter().enumerate() {
        if rec.len() != columns.len() {
            bail!("CSV record {} has {} fields, header has {}", i + 1, rec.len(), columns.len());
        }
    }
    let rows = records
        .into_iter()
        .map(|rec| rec.into_iter().map(Value::String).collect())
        .collect();
    Ok(Sweep { columns, rows })
}

fn csv_records(body: &str) -> Result<Vec<Vec<String>>> {
    let mut records = Vec::new();
    let mut record: Vec<String> = Vec::new();
    let mut field = String::new();
    let mut quoted = false;
    let mut chars = body.chars().peekable();
    while let Some(ch) = chars.next() {
        if quoted {
            match ch {
                '"' if chars.peek() == Some(&'"') => {
                    chars.next();
                    field.push('"');
                }
                '"' => quoted = false,
                _ => field.push(ch),
            }
        } else {
            match ch {
                '"' if field.is_empty() => quoted = true,
                '"' => bail!("stray quote inside unquoted CSV field"),
                ',' => record.push(std::mem::take(&mut field)),
                '\r' if chars.peek() == Some(&'\n') => {
                    chars.next();
                    record.push(std::mem::take(&mut field));
                    records.push(std::mem::take(&mut record));
                }
                '\n' => {
                    record.push(std::mem::take(&mut field));
                    records.push(std::mem::take(&mut record));
                }
                _ => field.push(ch),
            }
        }
    }
    if quoted {
        bail!("unterminated quoted CSV field");
    }
    if !field.is_empty() || !record.is_empty() {
        record.push(field);
        records.push(record);
    }
    Ok(records)
}
