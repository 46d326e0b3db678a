//! Tabular report emission.
//!
//! Reports are flat tables with a stable column order. Floats print with 10
//! significant digits and a locale-independent decimal point, so a rerun of
//! the same configuration produces byte-identical files. JSON mirrors the
//! CSV schema as an array of row objects; NaN or infinite values are refused
//! rather than emitted.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Formats a float with 10 significant digits, trimming trailing zeros
/// (\"%.10g\"-style).
pub fn fmt_float(x: f64) -> Result<String> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("refusing to format non-finite value {x}")));
    }
    if x == 0.0 {
        return Ok("0".into());
    }
    let exp = x.abs().log10().floor() as i32;
    let formatted = if (-4..10).contains(&exp) {
        let prec = (9 - exp).max(0) as usize;
        let s = format!("{x:.prec$}");
        trim_zeros(&s)
    } else {
        let s = format!("{x:.9e}");
        // 1.234500000e-12 -> 1.2345e-12
        match s.split_once('e') {
            Some((mantissa, e)) => format!("{}e{}", trim_zeros(mantissa), e),
            None => s,
        }
    };
    Ok(formatted)
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}

fn render_value(v: &Value) -> Result<String> {
    Ok(match v {
        Value::Int(i) => i.to_string(),
        Value::Float(f) => fmt_float(*f)?,
        Value::Text(t) => t.clone(),
        Value::Bool(b) => b.to_string(),
    })
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn to_csv(table: &Table) -> Result<String> {
    let mut out = String::new();
    out.push_str(&table.columns.iter().map(|c| csv_quote(c)).collect::<Vec<_>>().join(","));
    out.push('\n');
    for row in &table.rows {
        let fields: Result<Vec<String>> =
            row.iter().map(|v| Ok(csv_quote(&render_value(v)?))).collect();
        out.push_str(&fields?.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
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
    out
}

fn json_value(v: &Value) -> Result<String> {
    Ok(match v {
        Value::Int(i) => i.to_string(),
        Value::Float(f) => fmt_float(*f)?,
        Value::Text(t) => format!("\"{}\"", json_escape(t)),
        Value::Bool(b) => b.to_string(),
    })
}

pub fn to_json(table: &Table) -> Result<String> {
    let mut out = String::from("[\n");
    for (ri, row) in table.rows.iter().enumerate() {
        out.push_str("  {");
        for (ci, (col, val)) in table.columns.iter().zip(row).enumerate() {
            if ci > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "\"{}\": {}", json_escape(col), json_value(val)?);
        }
        out.push('}');
        if ri + 1 < table.rows.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]\n");
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Usage(format!("unknown format '{other}' (use csv or json)"))),
        }
    }
}

pub fn render(table: &Table, format: Format) -> Result<String> {
    match format {
        Format::Csv => to_csv(table),
        Format::Json => to_json(table),
    }
}

/// Writes the rendered report; `None` path prints to stdout.
pub fn emit(table: &Table, format: Format, path: Option<&Path>) -> Result<()> {
    let text = render(table, format)?;
    match path {
        Some(p) => {
            std::fs::write(p, text)
                .map_err(|e| Error::Io(format!("cannot write {}: {e}", p.display())))?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// Run manifest: configuration echo plus outcome summary. Reruns of the same
/// configuration reproduce identical numeric output; the wall time field is
/// informational and excluded from any byte-identity claim.
#[derive(Clone, Debug)]
pub struct RunManifest {
    pub command_line: String,
    pub version: String,
    pub wall_ms: u128,
    pub checks_total: usize,
    pub checks_passed: usize,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        format!(
            "{{\n  \"command\": \"{}\",\n  \"version\": \"{}\",\n  \"wall_ms\": {},\n  \"checks_total\": {},\n  \"checks_passed\": {}\n}}\n",
            json_escape(&self.command_line),
            json_escape(&self.version),
            self.wall_ms,
            self.checks_total,
            self.checks_passed
        )
    }

    pub fn write(&self, report_path: &Path) -> Result<()> {
        let mut path = report_path.as_os_str().to_owned();
        path.push(".manifest.json");
        std::fs::write(&path, self.to_json())
            .map_err(|e| Error::Io(format!("cannot write manifest: {e}")))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_ten_significant_digits() {
        assert_eq!(fmt_float(0.0).unwrap(), "0");
        assert_eq!(fmt_float(0.5).unwrap(), "0.5");
        assert_eq!(fmt_float(1.0).unwrap(), "1");
        assert_eq!(fmt_float(-2.25).unwrap(), "-2.25");
        assert_eq!(fmt_float(0.3989422804014327).unwrap(), "0.3989422804");
        assert_eq!(fmt_float(1234.56789012).unwrap(), "1234.56789");
        assert_eq!(fmt_float(1234.56789092).unwrap(), "1234.567891");
        assert_eq!(fmt_float(1e-12).unwrap(), "1e-12");
        assert_eq!(fmt_float(1.23450000001e15).unwrap(), "1.2345e15");
        assert!(fmt_float(f64::NAN).is_err());
        assert!(fmt_float(f64::INFINITY).is_err());
    }

    #[test]
    fn csv_rendering_and_quoting() {
        let mut t = Table::new(&["i", "value", "label"]);
        t.push(vec![0usize.into(), 0.25.into(), "plain".into()]);
        t.push(vec![1usize.into(), (-1.5).into(), "with,comma".into()]);
        let csv = to_csv(&t).unwrap();
        assert_eq!(csv, "i,value,label\n0,0.25,plain\n1,-1.5,\"with,comma\"\n");
        // Empty report renders as a header-only file.
        let empty = Table::new(&["a", "b"]);
        assert_eq!(to_csv(&empty).unwrap(), "a,b\n");
    }

    #[test]
    fn json_mirrors_csv_schema() {
        let mut t = Table::new(&["n", "ok"]);
        t.push(vec![4usize.into(), true.into()]);
        let json = to_json(&t).unwrap();
        assert_eq!(json, "[\n  {\"n\": 4, \"ok\": true}\n]\n");
        // Values parse back to the same numbers.
        assert!(json.contains("\"n\": 4"));
        let mut bad = Table::new(&["x"]);
        bad.push(vec![f64::NAN.into()]);
        assert!(to_json(&bad).is_err());
    }

    #[test]
    fn csv_json_value_roundtrip() {
        let mut t = Table::new(&["x"]);
        for &v in &[0.1, 123.456, 9.87e-23, -4.0] {
            t.push(vec![v.into()]);
        }
        let csv = to_csv(&t).unwrap();
        let parsed: Vec<f64> =
            csv.lines().skip(1).map(|l| l.parse::<f64>().unwrap()).collect();
        for (orig, p) in [0.1, 123.456, 9.87e-23, -4.0].iter().zip(&parsed) {
            assert!((orig - p).abs() <= orig.abs() * 1e-9);
        }
    }

    #[test]
    fn manifest_shape() {
        let m = RunManifest {
            command_line: "influence --n 2".into(),
            version: "0.1.0".into(),
            wall_ms: 12,
            checks_total: 3,
            checks_passed: 3,
        };
        let j = m.to_json();
        assert!(j.contains("\"checks_passed\": 3"));
        assert!(j.contains("influence --n 2"));
    }
}
