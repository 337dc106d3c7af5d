//! Rendering of command results as JSON, CSV or text.

use crate::args::Format;
use num::{BigInt, BigRational, BigUint};
use serde_json::{json, Number, Value};
use std::io::Write;

/// A command's result in every output format, plus its exit code.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
    pub text: String,
    pub code: u8,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, csv::Error> {
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv_header)?;
                for row in &self.csv_rows {
                    w.write_record(row)?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)
                    .expect("csv is utf-8")
            }
        })
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        let s = self.render(format).map_err(std::io::Error::other)?;
        out.write_all(s.as_bytes())
    }
}

pub fn big_int(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

pub fn big_uint(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

/// `{"num": n, "den": d}` with exact integers.
pub fn rational(q: &BigRational) -> Value {
    json!({ "num": big_int(q.numer()), "den": big_int(q.denom()) })
}

/// `n` for integers, `n/d` otherwise.
pub fn rational_cell(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn option_cell<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}
