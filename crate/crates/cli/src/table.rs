//! Report tables and their CSV / JSON renderings.

use std::io::Write;

use hydrogen_fd::numerics::format_fraction;
use hydrogen_fd::{QuadraticSurd, Rational};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Rational(Rational),
    Surd(QuadraticSurd),
    Bool(bool),
    Text(String),
    List(Vec<Cell>),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<Rational> for Cell {
    fn from(v: Rational) -> Self {
        Cell::Rational(v)
    }
}

impl From<QuadraticSurd> for Cell {
    fn from(v: QuadraticSurd) -> Self {
        Cell::Surd(v)
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    format!("{x:.16e}")
}

impl Cell {
    pub fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Rational(v) => format_fraction(v),
            Cell::Surd(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
            Cell::List(items) => items.iter().map(Cell::to_csv).collect::<Vec<_>>().join(";"),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(v.to_string()),
            Cell::Rational(v) => json!(format_fraction(v)),
            Cell::Surd(v) => serde_json::to_value(v).expect("surd serializes"),
            Cell::Bool(v) => json!(v),
            Cell::Text(v) => json!(v),
            Cell::List(items) => Value::Array(items.iter().map(Cell::to_json).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Table {
            command,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, out: impl Write) -> anyhow::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(&self.columns)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(Cell::to_csv))?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let object: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(name, cell)| (name.to_string(), cell.to_json()))
                    .collect();
                Value::Object(object)
            })
            .collect();
        json!({
            "command": self.command,
            "columns": self.columns,
            "rows": Value::Array(rows),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hydrogen_fd::numerics::rat;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23] {
            let text = format_float(x);
            assert_eq!(text.parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_float(0.0), "0");
    }

    #[test]
    fn csv_quotes_fields() {
        let mut table = Table::new("t", &["a", "b"]);
        table.push(vec![Cell::Text("x,y".into()), Cell::Text("say \"hi\"".into())]);
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
    }

    #[test]
    fn surd_json_schema() {
        let mu = QuadraticSurd::sqrt(rat(5, 4)).unwrap();
        assert_eq!(
            Cell::Surd(mu).to_json(),
            json!({"a": "0/1", "b": "1/1", "D": "5/4"})
        );
    }
}
