//! CSV persistence for records and aggregates.
//!
//! Floats are written in scientific notation with 17 significant digits,
//! which round-trips every `f64` exactly.

use std::io::{Read, Write};
use std::path::Path;

use super::aggregate::Aggregate;
use super::config::{Method, Study};
use super::runner::TrialRecord;
use crate::error::{Error, Result};

pub const RECORD_HEADER: [&str; 10] =
    ["study", "k", "eps_a", "eps_y", "trial", "seed", "algorithm", "rel_error", "iterations", "diverged"];

pub const AGGREGATE_HEADER: [&str; 11] = [
    "study",
    "k",
    "eps_a",
    "eps_y",
    "algorithm",
    "trials",
    "mean",
    "median",
    "std",
    "divergence_rate",
    "mean_iterations",
];

/// `x` with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("csv: {other:?}")),
    }
}

pub fn write_records<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_HEADER).map_err(csv_err)?;
    for r in records {
        w.write_record([
            r.study.name().to_string(),
            r.k.to_string(),
            fmt_f64(r.eps_a),
            fmt_f64(r.eps_y),
            r.trial.to_string(),
            r.seed.to_string(),
            r.algorithm.name().to_string(),
            fmt_f64(r.rel_error),
            r.iterations.to_string(),
            r.diverged.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_aggregates<W: Write>(aggs: &[Aggregate], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(AGGREGATE_HEADER).map_err(csv_err)?;
    for a in aggs {
        w.write_record([
            a.study.name().to_string(),
            a.k.to_string(),
            fmt_f64(a.eps_a),
            fmt_f64(a.eps_y),
            a.algorithm.name().to_string(),
            a.trials.to_string(),
            fmt_f64(a.mean),
            fmt_f64(a.median),
            fmt_f64(a.std),
            fmt_f64(a.divergence_rate),
            fmt_f64(a.mean_iterations),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_records(records: &[TrialRecord], path: &Path) -> Result<()> {
    write_records(records, std::io::BufWriter::new(std::fs::File::create(path)?))
}

pub fn emit_aggregates(aggs: &[Aggregate], path: &Path) -> Result<()> {
    write_aggregates(aggs, std::io::BufWriter::new(std::fs::File::create(path)?))
}

fn field<T: std::str::FromStr>(row: &csv::StringRecord, i: usize, name: &str) -> Result<T> {
    let raw = row.get(i).ok_or_else(|| Error::Parse(format!("missing column {name}")))?;
    raw.parse().map_err(|_| Error::Parse(format!("bad {name} value '{raw}'")))
}

fn reader<R: Read>(input: R, header: &[&str]) -> Result<csv::Reader<R>> {
    let mut r = csv::Reader::from_reader(input);
    let got = r.headers().map_err(csv_err)?;
    if got.iter().ne(header.iter().copied()) {
        return Err(Error::Parse(format!("unexpected header {:?}", got)));
    }
    Ok(r)
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<TrialRecord>> {
    let mut r = reader(input, &RECORD_HEADER)?;
    let mut out = Vec::new();
    for row in r.records() {
        let row = row.map_err(csv_err)?;
        out.push(TrialRecord {
            study: Study::parse(row.get(0).unwrap_or(""))?,
            k: field(&row, 1, "k")?,
            eps_a: field(&row, 2, "eps_a")?,
            eps_y: field(&row, 3, "eps_y")?,
            trial: field(&row, 4, "trial")?,
            seed: field(&row, 5, "seed")?,
            algorithm: Method::parse(row.get(6).unwrap_or(""))?,
            rel_error: field(&row, 7, "rel_error")?,
            iterations: field(&row, 8, "iterations")?,
            diverged: field(&row, 9, "diverged")?,
        });
    }
    Ok(out)
}

pub fn read_aggregates<R: Read>(input: R) -> Result<Vec<Aggregate>> {
    let mut r = reader(input, &AGGREGATE_HEADER)?;
    let mut out = Vec::new();
    for row in r.records() {
        let row = row.map_err(csv_err)?;
        out.push(Aggregate {
            study: Study::parse(row.get(0).unwrap_or(""))?,
            k: field(&row, 1, "k")?,
            eps_a: field(&row, 2, "eps_a")?,
            eps_y: field(&row, 3, "eps_y")?,
            algorithm: Method::parse(row.get(4).unwrap_or(""))?,
            trials: field(&row, 5, "trials")?,
            mean: field(&row, 6, "mean")?,
            median: field(&row, 7, "median")?,
            std: field(&row, 8, "std")?,
            divergence_rate: field(&row, 9, "divergence_rate")?,
            mean_iterations: field(&row, 10, "mean_iterations")?,
        });
    }
    Ok(out)
}

/// Reads either CSV kind; records are aggregated on the fly.
pub fn load_aggregates(path: &Path) -> Result<Vec<Aggregate>> {
    let text = std::fs::read_to_string(path)?;
    let header = text.lines().next().unwrap_or("");
    if header == RECORD_HEADER.join(",") {
        super::aggregate::aggregate(&read_records(text.as_bytes())?)
    } else {
        read_aggregates(text.as_bytes())
    }
}
