//! CSV emission for benchmark, exact-length and decoded-sample output.
//!
//! Reals are written in scientific notation with 17 significant digits so
//! every value round-trips through `f64` parsing.

use std::io::Write;

use crate::analysis::{loglog_slope, LengthStats};
use crate::bitcodes::Scheme;
use crate::error::{Error, Result};

/// 17 significant digits, `.` decimal separator, no locale.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: u64,
    pub stats: LengthStats,
    pub bound: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchTable {
    pub scheme: Scheme,
    pub dist: String,
    pub trials: u64,
    pub rows: Vec<BenchRow>,
}

impl BenchTable {
    /// Log-log slope of mean length against `n`, if at least two distinct
    /// positive points exist.
    pub fn slope(&self) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .map(|r| (r.n as f64, r.stats.mean))
            .collect();
        loglog_slope(&pts).ok()
    }

    /// One row per `n` plus a summary row carrying the slope.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "scheme",
            "dist",
            "n",
            "trials",
            "mean_bits",
            "stderr_bits",
            "bound_bits",
            "slope",
        ])
        .map_err(csv_err)?;
        let trials = self.trials.to_string();
        for r in &self.rows {
            w.write_record([
                self.scheme.name(),
                &self.dist,
                &r.n.to_string(),
                &trials,
                &real(r.stats.mean),
                &real(r.stats.stderr),
                &r.bound.map(real).unwrap_or_default(),
                "",
            ])
            .map_err(csv_err)?;
        }
        w.write_record([
            self.scheme.name(),
            &self.dist,
            "summary",
            &trials,
            "",
            "",
            "",
            &self.slope().map(real).unwrap_or_default(),
        ])
        .map_err(csv_err)?;
        w.flush().map_err(|e| Error::Corrupt(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExactRow {
    pub n: u64,
    pub expected_bits: f64,
    pub bound_bits: f64,
}

pub fn write_exact_csv<W: Write>(dist: &str, k_max: u32, rows: &[ExactRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["dist", "n", "k_max", "expected_bits", "bound_bits"])
        .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            dist,
            &r.n.to_string(),
            &k_max.to_string(),
            &real(r.expected_bits),
            &real(r.bound_bits),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Corrupt(e.to_string()))
}

/// Decoded samples as a one-column CSV with header `value`.
pub fn write_samples_csv<W: Write>(values: &[String], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["value"]).map_err(csv_err)?;
    for v in values {
        w.write_record([v]).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Corrupt(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Corrupt(format!("csv output failed: {e}"))
}
