//! CSV and JSON encodings of [`SweepRecord`]s.
//!
//! Floats are written with 10 significant digits in both formats, so a
//! record read back from either equals the record after that rounding.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::record::{SweepRecord, CSV_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Usage(format!(
                "unknown format `{other}` (expected csv or json)"
            ))),
        }
    }
}

/// Round to 10 significant digits.
pub fn round_sig10(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.9e}").parse().expect("formatted float parses")
}

fn fmt_float(v: f64) -> String {
    format!("{:?}", round_sig10(v))
}

fn rounded(r: &SweepRecord) -> SweepRecord {
    SweepRecord {
        load: round_sig10(r.load),
        active_load: round_sig10(r.active_load),
        nu: round_sig10(r.nu),
        target_load: r.target_load.map(round_sig10),
        plr: round_sig10(r.plr),
        plr_a: round_sig10(r.plr_a),
        throughput: round_sig10(r.throughput),
        ci_halfwidth: round_sig10(r.ci_halfwidth),
        ..r.clone()
    }
}

fn format_err(e: impl std::fmt::Display) -> Error {
    Error::Format(e.to_string())
}

pub fn emit_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(format_err)?;
    for r in records {
        w.write_record([
            r.mode.to_string(),
            fmt_float(r.load),
            fmt_float(r.active_load),
            fmt_float(r.nu),
            r.policy.to_string(),
            r.target_load.map(fmt_float).unwrap_or_default(),
            r.slots.to_string(),
            r.runs.to_string(),
            fmt_float(r.plr),
            fmt_float(r.plr_a),
            fmt_float(r.throughput),
            fmt_float(r.ci_halfwidth),
            r.seed.to_string(),
        ])
        .map_err(format_err)?;
    }
    w.flush().map_err(|e| Error::Format(e.to_string()))
}

pub fn emit_json<W: Write>(records: &[SweepRecord], mut out: W) -> Result<()> {
    let rows: Vec<SweepRecord> = records.iter().map(rounded).collect();
    serde_json::to_writer_pretty(&mut out, &rows).map_err(format_err)?;
    writeln!(out).map_err(format_err)
}

pub fn emit<W: Write>(records: &[SweepRecord], format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => emit_csv(records, out),
        Format::Json => emit_json(records, out),
    }
}

/// Write records to `path`, or to stdout when `path` is `None`.
pub fn write_records(records: &[SweepRecord], format: Format, path: Option<&Path>) -> Result<()> {
    match path {
        None => emit(records, format, io::stdout().lock()),
        Some(p) => {
            let io_err = |source| Error::Io {
                path: p.to_path_buf(),
                source,
            };
            let mut w = BufWriter::new(File::create(p).map_err(io_err)?);
            emit(records, format, &mut w).map_err(|e| match e {
                Error::Format(msg) => Error::Io {
                    path: p.to_path_buf(),
                    source: io::Error::other(msg),
                },
                other => other,
            })?;
            w.flush().map_err(io_err)
        }
    }
}

fn field<T: FromStr>(row: &csv::StringRecord, i: usize) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let raw = row
        .get(i)
        .ok_or_else(|| Error::Format(format!("missing column {}", CSV_HEADER[i])))?;
    raw.parse()
        .map_err(|e| Error::Format(format!("column {}: `{raw}`: {e}", CSV_HEADER[i])))
}

pub fn parse_csv<R: Read>(input: R) -> Result<Vec<SweepRecord>> {
    let mut reader = csv::Reader::from_reader(input);
    let header = reader.headers().map_err(format_err)?;
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Format(format!(
            "unexpected header `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(format_err)?;
        let target = row.get(5).unwrap_or("");
        records.push(SweepRecord {
            mode: field(&row, 0)?,
            load: field(&row, 1)?,
            active_load: field(&row, 2)?,
            nu: field(&row, 3)?,
            policy: field(&row, 4)?,
            target_load: if target.is_empty() {
                None
            } else {
                Some(field(&row, 5)?)
            },
            slots: field(&row, 6)?,
            runs: field(&row, 7)?,
            plr: field(&row, 8)?,
            plr_a: field(&row, 9)?,
            throughput: field(&row, 10)?,
            ci_halfwidth: field(&row, 11)?,
            seed: field(&row, 12)?,
        });
    }
    Ok(records)
}

pub fn parse_json<R: Read>(input: R) -> Result<Vec<SweepRecord>> {
    serde_json::from_reader(input).map_err(format_err)
}

pub fn read_records(path: &Path, format: Format) -> Result<Vec<SweepRecord>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    match format {
        Format::Csv => parse_csv(file),
        Format::Json => parse_json(file),
    }
}
