//! Tabular reports rendered as text, CSV or JSON from one payload.

use kleinian_selberg::zeta::sig15;
use num_complex::Complex64;
use serde_json::{Map, Value};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (expected text, csv or json)")),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Cell {
    Str(String),
    Int(i64),
    Bool(bool),
    Real(f64),
    /// Rendered as two columns `<name>_re`, `<name>_im`.
    Complex(Complex64),
    Rational(i64, i64),
}

impl Cell {
    fn width(&self) -> usize {
        if matches!(self, Cell::Complex(_)) {
            2
        } else {
            1
        }
    }

    fn texts(&self) -> Vec<String> {
        match self {
            Cell::Str(s) => vec![s.clone()],
            Cell::Int(i) => vec![i.to_string()],
            Cell::Bool(b) => vec![b.to_string()],
            Cell::Real(x) => vec![sig15(*x)],
            Cell::Complex(z) => vec![sig15(z.re), sig15(z.im)],
            Cell::Rational(n, d) => vec![format!("{n}/{d}")],
        }
    }

    fn json(&self) -> Vec<Value> {
        let real = |x: f64| {
            // the JSON number is the value of the CSV text
            let v: f64 = sig15(x).parse().unwrap_or(x);
            serde_json::Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null)
        };
        match self {
            Cell::Str(s) => vec![Value::String(s.clone())],
            Cell::Int(i) => vec![Value::from(*i)],
            Cell::Bool(b) => vec![Value::Bool(*b)],
            Cell::Real(x) => vec![real(*x)],
            Cell::Complex(z) => vec![real(z.re), real(z.im)],
            Cell::Rational(n, d) => vec![Value::String(format!("{n}/{d}"))],
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Cell {
        Cell::Str(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Cell {
        Cell::Str(s)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Cell {
        Cell::Real(x)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Cell {
        Cell::Int(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Cell {
        Cell::Int(x as i64)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Cell {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Cell {
        Cell::Bool(x)
    }
}

impl From<Complex64> for Cell {
    fn from(z: Complex64) -> Cell {
        Cell::Complex(z)
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Table {
        Table { name: name.to_string(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Column names with complex columns split in two; complex-ness is
    /// read off the first row.
    fn header(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, c) in self.columns.iter().enumerate() {
            if self.rows.first().is_some_and(|r| r[i].width() == 2) {
                out.push(format!("{c}_re"));
                out.push(format!("{c}_im"));
            } else {
                out.push(c.clone());
            }
        }
        out
    }

    fn text_rows(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().flat_map(|c| c.texts()).collect()).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header().join(",");
        s.push('\n');
        for r in self.text_rows() {
            s.push_str(&r.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report { command: command.to_string(), tables: Vec::new(), notes: Vec::new() }
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
            Format::Text => self.text(),
        }
    }

    fn csv(&self) -> String {
        let mut s = String::new();
        let many = self.tables.len() > 1;
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                s.push('\n');
            }
            if many {
                let _ = writeln!(s, "# {}", t.name);
            }
            s.push_str(&t.to_csv());
        }
        for n in &self.notes {
            let _ = writeln!(s, "# note: {n}");
        }
        s
    }

    fn json(&self) -> String {
        let mut tables = Map::new();
        for t in &self.tables {
            let header = t.header();
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| {
                    let vals: Vec<Value> = r.iter().flat_map(|c| c.json()).collect();
                    Value::Object(header.iter().cloned().zip(vals).collect())
                })
                .collect();
            tables.insert(t.name.clone(), Value::Array(rows));
        }
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.clone()));
        root.insert("tables".into(), Value::Object(tables));
        root.insert("notes".into(), Value::Array(self.notes.iter().cloned().map(Value::String).collect()));
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("report serialises");
        s.push('\n');
        s
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                s.push('\n');
            }
            let _ = writeln!(s, "{}", t.name);
            let header = t.header();
            let rows = t.text_rows();
            let widths: Vec<usize> = (0..header.len())
                .map(|j| rows.iter().map(|r| r[j].chars().count()).chain([header[j].chars().count()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
            };
            let _ = writeln!(s, "{}", line(&header));
            for r in &rows {
                let _ = writeln!(s, "{}", line(r));
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo");
        let mut t = Table::new("values", &["s", "z", "q"]);
        t.push(vec![2.0.into(), Complex64::new(0.1, -1.0 / 3.0).into(), Cell::Rational(-1, 6)]);
        r.table(t);
        r.note("a note, with a comma");
        r
    }

    #[test]
    fn csv_splits_complex_columns() {
        let csv = sample().render(Format::Csv);
        assert!(csv.starts_with("s,z_re,z_im,q\n"));
        assert!(csv.contains("-0.333333333333333"));
        assert!(csv.contains("-1/6"));
    }

    #[test]
    fn json_payload_matches_csv() {
        let r = sample();
        let csv = r.render(Format::Csv);
        let json: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        let row = &json["tables"]["values"][0];
        let fields: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row["z_im"].as_f64().unwrap(), fields[2].parse::<f64>().unwrap());
        assert_eq!(row["q"], "-1/6");
    }

    #[test]
    fn text_is_aligned() {
        let t = sample().render(Format::Text);
        assert!(t.starts_with("values\n"));
        assert!(t.contains("note: a note"));
    }
}
