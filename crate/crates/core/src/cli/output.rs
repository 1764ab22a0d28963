//! Records printed by the command-line front end.

use std::io::Write;

use serde_json::{Map, Value};

use crate::types::IntegralResult;

/// A single output cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Field {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Float(v)
    }
}

impl From<u32> for Field {
    fn from(v: u32) -> Self {
        Field::Int(v as i64)
    }
}

impl From<i32> for Field {
    fn from(v: i32) -> Self {
        Field::Int(v as i64)
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i64)
    }
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v as i64)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_string())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

/// `0.d1d2...d17E±xx`, the layout of the published tables.
pub fn format_sci(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return format!("{}0.00000000000000000E+00", if v.is_sign_negative() { "-" } else { "" });
    }
    let s = format!("{:.16e}", v.abs());
    let (mant, exp) = s.split_once('e').expect("exponent present");
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let exp: i32 = exp.parse::<i32>().expect("integer exponent") + 1;
    let sign = if v < 0.0 { "-" } else { "" };
    let esign = if exp < 0 { '-' } else { '+' };
    format!("{sign}0.{digits}E{esign}{:02}", exp.abs())
}

impl Field {
    /// Echoed inputs print in shortest round-trip form.
    fn input_text(&self) -> String {
        match self {
            Field::Float(f) => f.to_string(),
            other => other.text(),
        }
    }

    fn text(&self) -> String {
        match self {
            Field::Int(i) => i.to_string(),
            Field::Float(f) => format_sci(*f),
            Field::Text(s) => s.clone(),
            Field::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Int(i) => Value::from(*i),
            Field::Float(f) => Value::from(*f),
            Field::Text(s) => Value::from(s.as_str()),
            Field::Bool(b) => Value::from(*b),
        }
    }
}

/// One result line: the operation, its echoed inputs and its outputs.
#[derive(Clone, Debug, PartialEq)]
pub struct OutputRecord {
    pub operation: &'static str,
    pub inputs: Vec<(&'static str, Field)>,
    pub outputs: Vec<(&'static str, Field)>,
}

impl OutputRecord {
    pub fn new(operation: &'static str) -> Self {
        Self {
            operation,
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn input(mut self, name: &'static str, v: impl Into<Field>) -> Self {
        self.inputs.push((name, v.into()));
        self
    }

    pub fn output(mut self, name: &'static str, v: impl Into<Field>) -> Self {
        self.outputs.push((name, v.into()));
        self
    }

    /// Appends `value, abs_err, terms, converged`.
    pub fn result(self, r: &IntegralResult) -> Self {
        self.output("value", r.value)
            .output("abs_err", r.abs_error_estimate)
            .output("terms", r.terms_used)
            .output("converged", r.converged)
    }

    fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("operation".into(), Value::from(self.operation));
        let inputs: Map<String, Value> = self.inputs.iter().map(|(k, v)| (k.to_string(), v.json())).collect();
        obj.insert("inputs".into(), Value::Object(inputs));
        for (k, v) in &self.outputs {
            obj.insert(k.to_string(), v.json());
        }
        Value::Object(obj)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// CSV with a header from the first record, or JSON (an object for a single
/// record, an array otherwise).
pub fn write_records(out: &mut dyn Write, records: &[OutputRecord], format: Format, many: bool) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = records.first() {
                w.write_record(first.inputs.iter().chain(&first.outputs).map(|(k, _)| *k))?;
            }
            for r in records {
                w.write_record(
                    r.inputs.iter().map(|(_, v)| v.input_text()).chain(r.outputs.iter().map(|(_, v)| v.text())),
                )?;
            }
            w.flush()?;
        }
        Format::Json => {
            let v = if many || records.len() != 1 {
                Value::Array(records.iter().map(OutputRecord::to_json).collect())
            } else {
                records[0].to_json()
            };
            serde_json::to_writer_pretty(&mut *out, &v)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_layout() {
        assert_eq!(format_sci(0.15968050735256670), "0.15968050735256670E+00");
        assert_eq!(format_sci(-0.035522376544132921), "-0.35522376544132921E-01");
        assert_eq!(format_sci(47505.6243580342), "0.47505624358034198E+05");
        assert_eq!(format_sci(0.25), "0.25000000000000000E+00");
        assert_eq!(format_sci(0.0), "0.00000000000000000E+00");
        assert_eq!(format_sci(1e-300), "0.10000000000000000E-299");
    }

    #[test]
    fn layouts_round_trip() {
        for v in [1.0 / 3.0, -2.5e-17, 6.02e23, f64::MIN_POSITIVE] {
            assert_eq!(format_sci(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_and_json() {
        let r = OutputRecord::new("gamma").input("k", 1u32).output("value", 0.5);
        let mut buf = Vec::new();
        write_records(&mut buf, &[r.clone()], Format::Csv, false).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "k,value\n1,0.50000000000000000E+00\n");
        let mut buf = Vec::new();
        write_records(&mut buf, &[r], Format::Json, false).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["operation"], "gamma");
        assert_eq!(v["inputs"]["k"], 1);
        assert_eq!(v["value"], 0.5);
    }
}
