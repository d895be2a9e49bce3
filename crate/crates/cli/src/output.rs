//! Flat output records and their table, CSV and JSON-lines renderings.

use std::io::{self, Write};

use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Field {
    Int(BigInt),
    Rational(BigRational),
    Real(f64),
    Bool(bool),
    Text(String),
    Null,
}

impl From<i64> for Field {
    fn from(v: i64) -> Self {
        Field::Int(BigInt::from(v))
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(BigInt::from(v))
    }
}

impl From<BigInt> for Field {
    fn from(v: BigInt) -> Self {
        Field::Int(v)
    }
}

impl From<BigRational> for Field {
    fn from(v: BigRational) -> Self {
        Field::Rational(v)
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Real(v)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_string())
    }
}

impl<T: Into<Field>> From<Option<T>> for Field {
    fn from(v: Option<T>) -> Self {
        v.map_or(Field::Null, Into::into)
    }
}

/// Always `p/q`, including integers.
pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Twelve significant digits, fixed notation for moderate magnitudes.
pub fn decimal_string(q: &BigRational) -> String {
    let x = q.to_f64().unwrap_or(f64::NAN);
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci
        .split_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if (-5..12).contains(&exp) {
        let fixed = format!("{:.*}", (11 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        let (mant, e) = sci.split_once('e').expect("scientific notation");
        format!("{}e{e}", trim_zeros(mant))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl Field {
    /// Cell text for CSV; rationals as `p/q`.
    fn cell(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::Rational(q) => rational_string(q),
            Field::Real(x) => format!("{x}"),
            Field::Bool(b) => b.to_string(),
            Field::Text(t) => t.clone(),
            Field::Null => String::new(),
        }
    }

    /// Cell text for tables; rationals carry their decimal value too.
    fn display(&self) -> String {
        match self {
            Field::Rational(q) if q.is_integer() => rational_string(q),
            Field::Rational(q) => format!("{} ≈ {}", rational_string(q), decimal_string(q)),
            Field::Null => "-".into(),
            other => other.cell(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Int(v) => v
                .to_i64()
                .map_or_else(|| Value::String(v.to_string()), Value::from),
            Field::Rational(q) => Value::String(rational_string(q)),
            Field::Real(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Field::Bool(b) => Value::Bool(*b),
            Field::Text(t) => Value::String(t.clone()),
            Field::Null => Value::Null,
        }
    }
}

/// One output row as ordered key-value pairs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Record {
    fields: Vec<(String, Field)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Field>) {
        self.fields.push((key.to_string(), value.into()));
    }

    fn keys(&self) -> Vec<&str> {
        self.fields.iter().map(|(k, _)| k.as_str()).collect()
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .fields
            .iter()
            .map(|(k, v)| (k.clone(), v.json()))
            .collect();
        Value::Object(map)
    }
}

/// Writes all records in one format. CSV takes its header from the first
/// record.
pub fn emit(out: &mut impl Write, format: Format, records: &[Record]) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", r.to_json())?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = records.first() {
                w.write_record(first.keys())?;
            }
            for r in records {
                w.write_record(r.fields.iter().map(|(_, v)| v.cell()))?;
            }
            w.flush()?;
        }
        Format::Table if records.len() == 1 => {
            let r = &records[0];
            let width = r
                .fields
                .iter()
                .map(|(k, _)| k.chars().count())
                .max()
                .unwrap_or(0);
            for (k, v) in &r.fields {
                writeln!(out, "{k:<width$}  {}", v.display())?;
            }
        }
        Format::Table => {
            let Some(first) = records.first() else {
                return Ok(());
            };
            let header: Vec<String> = first.keys().iter().map(|s| s.to_string()).collect();
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| r.fields.iter().map(|(_, v)| v.display()).collect())
                .collect();
            let widths: Vec<usize> = (0..header.len())
                .map(|i| {
                    rows.iter()
                        .filter_map(|row| row.get(i))
                        .chain(std::iter::once(&header[i]))
                        .map(|s| s.chars().count())
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(&header))?;
            for row in &rows {
                writeln!(out, "{}", line(row))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rationals_round_trip() {
        for r in [q(14, 9), q(0, 1), q(-4, 627419520), q(7, 1)] {
            let s = rational_string(&r);
            assert!(s.contains('/'));
            assert_eq!(s.parse::<BigRational>().unwrap(), r);
        }
    }

    #[test]
    fn decimals_have_twelve_digits() {
        assert_eq!(decimal_string(&q(14, 9)), "1.55555555556");
        assert_eq!(decimal_string(&q(2, 627419520)), "3.18765982926e-9");
        assert_eq!(decimal_string(&q(-1, 3)), "-0.333333333333");
        assert_eq!(decimal_string(&q(2, 1)), "2");
        assert_eq!(decimal_string(&q(0, 1)), "0");
    }

    #[test]
    fn csv_and_json_agree() {
        let recs = vec![
            Record::new()
                .with("n", 3i64)
                .with("x", q(14, 9))
                .with("ok", true)
                .with("u", Option::<i64>::None),
            Record::new()
                .with("n", 4i64)
                .with("x", q(1, 2))
                .with("ok", false)
                .with("u", Some(5i64)),
        ];
        let mut csv = Vec::new();
        emit(&mut csv, Format::Csv, &recs).unwrap();
        assert_eq!(
            String::from_utf8(csv).unwrap(),
            "n,x,ok,u\n3,14/9,true,\n4,1/2,false,5\n"
        );
        let mut json = Vec::new();
        emit(&mut json, Format::Json, &recs).unwrap();
        assert_eq!(
            String::from_utf8(json).unwrap(),
            "{\"n\":3,\"x\":\"14/9\",\"ok\":true,\"u\":null}\n{\"n\":4,\"x\":\"1/2\",\"ok\":false,\"u\":5}\n"
        );
    }
}
