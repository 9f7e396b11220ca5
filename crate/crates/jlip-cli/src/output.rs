//! Report emission: canonical JSON and CSV.
//!
//! Every float is printed with 17 significant digits (`{:.16e}`), enough to
//! round-trip f64 exactly, so a repeated run emits byte-identical reports.
//! The optional timestamp is the only run-dependent field; `--no-timestamp`
//! drops it for comparisons.

use serde::Serialize;
use std::io::{self, Write};
use std::path::PathBuf;

/// Formats a float with 17 significant digits in a JSON-legal way.
pub fn float17(v: f64) -> String {
    format!("{v:.16e}")
}

struct SciFloats;

impl serde_json::ser::Formatter for SciFloats {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.7e}")
    }
}

/// Common report header; the payload's own fields follow it.
#[derive(Serialize)]
pub struct Envelope<P: Serialize> {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    #[serde(flatten)]
    pub payload: P,
}

pub fn unix_timestamp(suppress: bool) -> Option<u64> {
    if suppress {
        return None;
    }
    Some(
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    )
}

pub fn to_json<P: Serialize>(envelope: &Envelope<P>) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SciFloats);
    envelope
        .serialize(&mut ser)
        .expect("reports contain only serializable data");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits utf-8")
}

/// A CSV document: one header, one row per record.
pub fn to_csv(header: &str, rows: &[String]) -> String {
    let mut text = String::with_capacity(16 * (rows.len() + 1));
    text.push_str(header);
    text.push('\n');
    for row in rows {
        text.push_str(row);
        text.push('\n');
    }
    text
}

pub fn emit(text: &str, out: &Option<PathBuf>) -> io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => io::stdout().write_all(text.as_bytes()),
    }
}
