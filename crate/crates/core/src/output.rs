//! Tabular output as RFC-4180 CSV or newline-delimited JSON.
//!
//! Numbers are printed with 12 significant digits in `%g` style so identical
//! inputs give byte-identical output, and the same token appears in both
//! formats. Infinite thresholds are written as the string `inf`; any other
//! non-finite number is refused.

use std::collections::BTreeMap;
use std::io::{self, Write};

use crate::units::{Dimension, UnitSystem};

pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    /// An infinite threshold.
    Inf,
    Null,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn opt(v: Option<f64>) -> Self {
        v.map_or(Cell::Null, Cell::Num)
    }
}

impl From<crate::input::Threshold> for Cell {
    fn from(t: crate::input::Threshold) -> Self {
        match t {
            crate::input::Threshold::Finite(v) => Cell::Num(v),
            crate::input::Threshold::Infinite => Cell::Inf,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Column {
    pub name: &'static str,
    pub dim: Dimension,
}

pub const fn col(name: &'static str, dim: Dimension) -> Column {
    Column { name, dim }
}

pub const fn plain(name: &'static str) -> Column {
    Column { name, dim: Dimension::Dimensionless }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// `%.12g`: fixed notation for decimal exponents in [−4, 12), scientific
/// otherwise, trailing zeros removed.
pub fn format_number(v: f64) -> String {
    debug_assert!(v.is_finite());
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, v))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), sign, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn non_finite(column: &str, v: f64) -> io::Error {
    io::Error::new(
        io::ErrorKind::InvalidData,
        format!("non-finite value {v} in column {column}"),
    )
}

impl Table {
    pub fn new(columns: Vec<Column>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match header");
        self.rows.push(row);
    }

    fn token(&self, col: usize, cell: &Cell, units: &UnitSystem) -> io::Result<Option<String>> {
        Ok(match cell {
            Cell::Num(v) => {
                let shown = units.display(*v, self.columns[col].dim);
                if !shown.is_finite() {
                    return Err(non_finite(self.columns[col].name, shown));
                }
                Some(format_number(shown))
            }
            Cell::Int(i) => Some(i.to_string()),
            Cell::Bool(b) => Some(b.to_string()),
            Cell::Text(s) => Some(s.clone()),
            Cell::Inf => Some("inf".to_string()),
            Cell::Null => None,
        })
    }

    pub fn write<W: Write>(&self, out: W, format: Format, units: &UnitSystem) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out, units),
            Format::Json => self.write_ndjson(out, units),
        }
    }

    pub fn write_csv<W: Write>(&self, out: W, units: &UnitSystem) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(out);
        w.write_record(self.columns.iter().map(|c| c.name))?;
        for row in &self.rows {
            let mut record = Vec::with_capacity(row.len());
            for (i, cell) in row.iter().enumerate() {
                record.push(self.token(i, cell, units)?.unwrap_or_default());
            }
            w.write_record(&record)?;
        }
        w.flush()
    }

    pub fn write_ndjson<W: Write>(&self, mut out: W, units: &UnitSystem) -> io::Result<()> {
        for row in &self.rows {
            let mut line = String::from("{");
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                line.push_str(&json_string(self.columns[i].name));
                line.push(':');
                match (cell, self.token(i, cell, units)?) {
                    (_, None) => line.push_str("null"),
                    (Cell::Text(_) | Cell::Inf, Some(tok)) => line.push_str(&json_string(&tok)),
                    (_, Some(tok)) => line.push_str(&tok),
                }
            }
            line.push_str("}\n");
            out.write_all(line.as_bytes())?;
        }
        out.flush()
    }

    pub fn render(&self, format: Format, units: &UnitSystem) -> io::Result<String> {
        let mut buf = Vec::new();
        self.write(&mut buf, format, units)?;
        Ok(String::from_utf8(buf).expect("output is UTF-8"))
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Format-independent view of an emitted value, for comparing the two
/// encodings of a row.
#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    Number(String),
    Bool(bool),
    Text(String),
    Null,
}

impl Token {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Token::Number(s) => s.parse().ok(),
            _ => None,
        }
    }
}

pub type Record = BTreeMap<String, Token>;

fn classify_csv_token(raw: &str) -> Token {
    match raw {
        "" => Token::Null,
        "true" => Token::Bool(true),
        "false" => Token::Bool(false),
        _ if raw.starts_with(|c: char| c.is_ascii_digit() || c == '-')
            && raw.parse::<f64>().is_ok_and(f64::is_finite) =>
        {
            Token::Number(raw.to_string())
        }
        _ => Token::Text(raw.to_string()),
    }
}

pub fn parse_csv(text: &str) -> Result<Vec<Record>, csv::Error> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers()?.clone();
    rdr.records()
        .map(|rec| {
            let rec = rec?;
            Ok(headers
                .iter()
                .zip(rec.iter())
                .map(|(h, v)| (h.to_string(), classify_csv_token(v)))
                .collect())
        })
        .collect()
}

pub fn parse_ndjson(text: &str) -> Result<Vec<Record>, serde_json::Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let obj: serde_json::Map<String, serde_json::Value> = serde_json::from_str(line)?;
            Ok(obj
                .into_iter()
                .map(|(k, v)| {
                    let tok = match v {
                        serde_json::Value::Null => Token::Null,
                        serde_json::Value::Bool(b) => Token::Bool(b),
                        serde_json::Value::Number(n) => match n.as_i64() {
                            Some(i) => Token::Number(i.to_string()),
                            None => Token::Number(format_number(n.as_f64().unwrap_or(f64::NAN))),
                        },
                        serde_json::Value::String(s) => Token::Text(s),
                        other => Token::Text(other.to_string()),
                    };
                    (k, tok)
                })
                .collect())
        })
        .collect()
}
