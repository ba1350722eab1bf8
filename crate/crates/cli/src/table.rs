//! Column tables written as CSV or JSON.
//!
//! Reals are printed with 17 significant digits (`{:.16e}`), so every `f64`
//! survives a text round trip bit for bit. Non-finite values use the
//! sentinels `inf`, `-inf` and `nan`; in JSON they appear as strings.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use crate::config::Format;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl Cell {
    fn to_text(&self) -> String {
        match self {
            Self::Int(i) => i.to_string(),
            Self::Real(v) => format_real(*v),
            Self::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Self::Int(i) => Value::from(*i),
            Self::Real(v) => serde_json::Number::from_f64(*v)
                .map(Value::Number)
                .unwrap_or_else(|| Value::String(format_real(*v))),
            Self::Text(s) => Value::String(s.clone()),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Self::Real(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Self::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Self::Text(v.to_owned())
    }
}

pub fn format_real(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    /// # Panics
    ///
    /// Panics if the row width differs from the header.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::to_text).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Cell::to_json))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut out = serde_json::to_string_pretty(&Value::Array(rows)).expect("tables serialize");
        out.push('\n');
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Writes `table` to `out`, or to stdout when `out` is `None`.
pub fn emit_table(table: &Table, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    if table.is_empty() {
        return Err(CliError::Config("refusing to write an empty table".into()));
    }
    let text = table.render(format);
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["x", "v", "note"]);
        t.push(vec![Cell::Int(-1), Cell::Real(0.1), "a".into()]);
        t.push(vec![Cell::Int(2), Cell::Real(f64::INFINITY), "b".into()]);
        t
    }

    #[test]
    fn csv_layout() {
        assert_eq!(
            sample().to_csv(),
            "x,v,note\n-1,1.0000000000000001e-1,a\n2,inf,b\n"
        );
    }

    #[test]
    fn reals_round_trip_exactly() {
        for v in [
            0.1,
            -0.0,
            1.0 / 3.0,
            5e-324,
            f64::MAX,
            0.681_037_072_175_310_8,
        ] {
            let back: f64 = format_real(v).parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits());
        }
        assert_eq!(format_real(f64::NEG_INFINITY), "-inf");
        assert_eq!(format_real(f64::NAN), "nan");
    }

    #[test]
    fn json_keeps_column_order_and_sentinels() {
        let json: Value = serde_json::from_str(&sample().to_json()).unwrap();
        let rows = json.as_array().unwrap();
        assert_eq!(rows.len(), 2);
        let keys: Vec<&String> = rows[0].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["x", "v", "note"]);
        assert_eq!(rows[0]["v"].as_f64(), Some(0.1));
        assert_eq!(rows[1]["v"], Value::String("inf".into()));
    }

    #[test]
    fn empty_tables_rejected() {
        let err = emit_table(&Table::new(&["a"]), Format::Csv, None).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn write_to_missing_directory_is_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("out.csv");
        let err = emit_table(&sample(), Format::Csv, Some(&path)).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    #[should_panic(expected = "row width")]
    fn ragged_rows_panic() {
        Table::new(&["a", "b"]).push(vec![Cell::Int(1)]);
    }
}
