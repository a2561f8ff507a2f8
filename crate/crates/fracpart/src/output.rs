//! Table rendering: csv, json, and OEIS-style b-files.
//!
//! Rendering is a pure function of the table and the spec, so identical
//! inputs give byte-identical output.

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{Map, Number, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Bfile,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "bfile" => Ok(Format::Bfile),
            other => Err(format!(
                "unknown format `{other}` (expected csv, json or bfile)"
            )),
        }
    }
}

/// How and where a table is written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputSpec {
    pub format: Format,
    /// Significant digits for floats; `None` prints the shortest round-trip form.
    pub precision: Option<usize>,
    pub destination: Option<PathBuf>,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            format: Format::Csv,
            precision: None,
            destination: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    BigInt(BigInt),
    Rational(BigRational),
    Float(f64),
    Text(String),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<BigRational> for Cell {
    fn from(v: BigRational) -> Self {
        Cell::Rational(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Rows under a fixed header, plus optional scalar summary fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Emitted as top-level fields in json; omitted from csv and bfile.
    pub summary: Vec<(String, Cell)>,
    /// `(index column, value column)` when the table reads as a sequence.
    pub sequence: Option<(usize, usize)>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_owned(),
            columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            rows: Vec::new(),
            summary: Vec::new(),
            sequence: None,
        }
    }

    pub fn sequence(mut self, index: usize, value: usize) -> Self {
        self.sequence = Some((index, value));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.to_owned(), value.into()));
    }
}

#[derive(Debug)]
pub enum RenderError {
    NotASequence(String),
    Io(io::Error),
    Csv(csv::Error),
}

impl fmt::Display for RenderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenderError::NotASequence(name) => {
                write!(
                    f,
                    "`{name}` output has no single index/value pair; bfile is unavailable"
                )
            }
            RenderError::Io(e) => write!(f, "write failed: {e}"),
            RenderError::Csv(e) => write!(f, "csv write failed: {e}"),
        }
    }
}

impl std::error::Error for RenderError {}

impl From<io::Error> for RenderError {
    fn from(e: io::Error) -> Self {
        RenderError::Io(e)
    }
}

impl From<csv::Error> for RenderError {
    fn from(e: csv::Error) -> Self {
        RenderError::Csv(e)
    }
}

/// `x` to `digits` significant digits, positional for moderate exponents.
pub fn format_significant(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_owned();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-6..=20).contains(&exp) {
        return sci;
    }
    let negative = mantissa.starts_with('-');
    let mantissa_digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), mantissa_digits)
    } else if point as usize >= mantissa_digits.len() {
        format!(
            "{}{}",
            mantissa_digits,
            "0".repeat(point as usize - mantissa_digits.len())
        )
    } else {
        let (int, frac) = mantissa_digits.split_at(point as usize);
        format!("{int}.{frac}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn format_float(x: f64, precision: Option<usize>) -> String {
    match precision {
        Some(p) => format_significant(x, p),
        None => format!("{x:?}"),
    }
}

fn cell_text(cell: &Cell, precision: Option<usize>) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::BigInt(v) => v.to_string(),
        Cell::Rational(v) => v.to_string(),
        Cell::Float(v) => format_float(*v, precision),
        Cell::Text(s) => s.clone(),
    }
}

fn cell_json(cell: &Cell, precision: Option<usize>) -> Json {
    match cell {
        Cell::Int(v) => Json::from(*v),
        Cell::BigInt(v) => Json::String(v.to_string()),
        Cell::Rational(v) => Json::String(v.to_string()),
        Cell::Float(v) => {
            let rounded: f64 = format_float(*v, precision).parse().unwrap_or(*v);
            Number::from_f64(rounded).map_or(Json::Null, Json::Number)
        }
        Cell::Text(s) => Json::String(s.clone()),
    }
}

/// Renders `table` per `spec` into a byte buffer.
pub fn render(table: &Table, spec: &OutputSpec) -> Result<Vec<u8>, RenderError> {
    let p = spec.precision;
    match spec.format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(|c| cell_text(c, p)))?;
            }
            w.into_inner().map_err(|e| RenderError::Io(e.into_error()))
        }
        Format::Json => {
            let mut top = Map::new();
            top.insert("command".into(), Json::String(table.name.clone()));
            top.insert(
                "columns".into(),
                Json::Array(table.columns.iter().cloned().map(Json::String).collect()),
            );
            for (k, v) in &table.summary {
                top.insert(k.clone(), cell_json(v, p));
            }
            let rows = table
                .rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Json> = table
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.clone(), cell_json(v, p)))
                        .collect();
                    Json::Object(obj)
                })
                .collect();
            top.insert("rows".into(), Json::Array(rows));
            let mut out = serde_json::to_vec_pretty(&Json::Object(top)).map_err(io::Error::from)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Bfile => {
            let (idx, val) = table
                .sequence
                .ok_or_else(|| RenderError::NotASequence(table.name.clone()))?;
            let mut out = Vec::new();
            for row in &table.rows {
                writeln!(
                    out,
                    "{} {}",
                    cell_text(&row[idx], p),
                    cell_text(&row[val], p)
                )?;
            }
            Ok(out)
        }
    }
}

/// Renders and writes to the spec's destination (standard output by default).
pub fn emit(table: &Table, spec: &OutputSpec) -> Result<(), RenderError> {
    let bytes = render(table, spec)?;
    match &spec.destination {
        Some(path) => std::fs::write(path, bytes)?,
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(&bytes)?;
            lock.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sample() -> Table {
        let mut t = Table::new("bseries", &["n", "b"]).sequence(0, 1);
        t.push(vec![Cell::from(2usize), Cell::from(r(3, 2))]);
        t.push(vec![Cell::from(3usize), Cell::from(r(11, 6))]);
        t
    }

    #[test]
    fn significant_digits() {
        assert_eq!(
            format_significant(0.561_141_352_873_154_4, 10),
            "0.5611413529"
        );
        assert_eq!(format_significant(-4.210_278_222_6, 7), "-4.210278");
        assert_eq!(format_significant(1234.5, 2), "1200");
        assert_eq!(format_significant(1.0, 3), "1.00");
        assert_eq!(format_significant(1e-9, 3), "1.00e-9");
        assert_eq!(format_significant(0.0, 5), "0");
    }

    #[test]
    fn csv_layout() {
        let out = render(&sample(), &OutputSpec::default()).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "n,b\n2,3/2\n3,11/6\n");
    }

    #[test]
    fn csv_quotes_commas() {
        let mut t = Table::new("checks", &["status", "detail"]);
        t.push(vec!["PASS".into(), "a, b".into()]);
        let out = render(&t, &OutputSpec::default()).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "status,detail\nPASS,\"a, b\"\n"
        );
    }

    #[test]
    fn bfile_layout() {
        let spec = OutputSpec {
            format: Format::Bfile,
            ..OutputSpec::default()
        };
        let out = render(&sample(), &spec).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "2 3/2\n3 11/6\n");
        let t = Table::new("bnk", &["n", "k", "b"]);
        assert!(matches!(
            render(&t, &spec),
            Err(RenderError::NotASequence(_))
        ));
    }

    #[test]
    fn json_keeps_rationals_as_strings() {
        let mut t = sample();
        t.summarize("ratio", 0.75);
        let spec = OutputSpec {
            format: Format::Json,
            ..OutputSpec::default()
        };
        let v: Json = serde_json::from_slice(&render(&t, &spec).unwrap()).unwrap();
        assert_eq!(v["rows"][1]["b"], Json::String("11/6".into()));
        assert_eq!(v["rows"][0]["n"], Json::from(2));
        assert_eq!(v["ratio"].as_f64(), Some(0.75));
        assert_eq!(v["command"], "bseries");
    }

    #[test]
    fn json_float_round_trip() {
        let x = 0.561_141_352_873_154_4_f64;
        let mut t = Table::new("ratio", &["n", "ratio"]);
        t.push(vec![Cell::from(15000usize), Cell::from(x)]);
        let spec = OutputSpec {
            format: Format::Json,
            ..OutputSpec::default()
        };
        let v: Json = serde_json::from_slice(&render(&t, &spec).unwrap()).unwrap();
        assert_eq!(v["rows"][0]["ratio"].as_f64(), Some(x));
    }
}
