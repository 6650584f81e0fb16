use std::io::Write;

use beatty_core::{Complex64, Result};
use serde_json::{Map, Number, Value};

/// A value in an output row.
#[derive(Clone, Debug)]
pub enum Cell {
    Int(i128),
    Float(f64),
    Complex(Complex64),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Cell {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

fn float_text(v: f64) -> String {
    format!("{v:?}")
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => float_text(*v),
            Cell::Complex(z) if z.im == 0.0 => float_text(z.re),
            Cell::Complex(z) => {
                let sign = if z.im.is_sign_negative() { '-' } else { '+' };
                format!("{}{sign}{}i", float_text(z.re), float_text(z.im.abs()))
            }
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        let num = |v: f64| Number::from_f64(v).map_or(Value::Null, Value::Number);
        match self {
            Cell::Int(v) => match i64::try_from(*v) {
                Ok(i) => Value::from(i),
                Err(_) => Value::String(v.to_string()),
            },
            Cell::Float(v) => num(*v),
            Cell::Complex(z) if z.im == 0.0 => num(z.re),
            Cell::Complex(_) => Value::String(self.text()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Rows under a fixed header.
#[derive(Clone, Debug)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Table {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// CSV with a leading comment line, or a JSON array of flat objects.
pub fn render(table: &Table, format: Format, comment: &str) -> Result<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut out = Vec::new();
            writeln!(out, "# {comment}")?;
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&table.columns).map_err(csv_error)?;
            for row in &table.rows {
                w.write_record(row.iter().map(Cell::text)).map_err(csv_error)?;
            }
            w.into_inner().map_err(|e| beatty_core::Error::Io(e.into_error()))
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let mut m = Map::new();
                    for (k, c) in table.columns.iter().zip(row) {
                        m.insert((*k).to_string(), c.json());
                    }
                    Value::Object(m)
                })
                .collect();
            let mut out = serde_json::to_vec_pretty(&Value::Array(rows)).expect("values serialise");
            out.push(b'\n');
            Ok(out)
        }
    }
}

fn csv_error(e: csv::Error) -> beatty_core::Error {
    beatty_core::Error::Io(std::io::Error::other(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_cells() {
        assert_eq!(Cell::Complex(Complex64::new(1.5, 0.0)).text(), "1.5");
        assert_eq!(Cell::Complex(Complex64::new(1.0, -2.0)).text(), "1.0-2.0i");
        assert_eq!(Cell::Complex(Complex64::new(0.0, 0.25)).text(), "0.0+0.25i");
        assert_eq!(Cell::Empty.text(), "");
    }

    #[test]
    fn renders_both_formats() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec![Cell::Int(1), Cell::Float(0.5)]);
        let csv = String::from_utf8(render(&t, Format::Csv, "hello").unwrap()).unwrap();
        assert_eq!(csv, "# hello\na,b\n1,0.5\n");
        let json = String::from_utf8(render(&t, Format::Json, "hello").unwrap()).unwrap();
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v[0]["a"], 1);
        assert_eq!(v[0]["b"], 0.5);
    }
}
