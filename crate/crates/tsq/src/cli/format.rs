//! Report serialization with 17-significant-digit floats.

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};
use std::io;

use crate::error::{Error, Result};

/// `d.dddddddddddddddde±x`, which round-trips every `f64`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

struct F17;

impl Formatter for F17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn write_null<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        CompactFormatter.write_null(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, F17);
    value.serialize(&mut ser).map_err(|e| Error::Numerical(format!("serialization: {e}")))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Error::Numerical(format!("serialization: {e}")))
}

/// One CSV cell.
pub enum Cell {
    F(f64),
    I(u64),
    S(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::F(x) => fmt_f64(*x),
            Cell::I(i) => i.to_string(),
            Cell::S(s) => s.clone(),
        }
    }
}

pub fn to_csv(headers: &[&str], rows: &[Vec<Cell>], trailer: &[(String, Cell)]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| Error::Numerical(format!("csv: {e}"));
    w.write_record(headers).map_err(err)?;
    for r in rows {
        w.write_record(r.iter().map(Cell::render)).map_err(err)?;
    }
    let mut out = String::from_utf8(w.into_inner().map_err(|e| Error::Numerical(format!("csv: {e}")))?)
        .map_err(|e| Error::Numerical(format!("csv: {e}")))?;
    for (k, v) in trailer {
        out.push_str(&format!("# {k}={}\n", v.render()));
    }
    Ok(out)
}
