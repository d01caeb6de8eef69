//! Summaries of sweep CSVs: per-`(witness, p, q)` bands of normalised ratios,
//! and the scaled scan `n^{-s-1/p+1/q} * ratio` in long form.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::sweep::{read_csv, SweepRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportKind {
    BandSummary,
    ScanTable,
}

impl std::str::FromStr for ReportKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "band-summary" => Ok(ReportKind::BandSummary),
            "scan-table" => Ok(ReportKind::ScanTable),
            other => Err(Error::Domain(format!("unknown report kind '{other}'"))),
        }
    }
}

pub const BAND_HEADER: [&str; 7] = ["witness", "p", "q", "count", "min_norm_ratio", "max_norm_ratio", "spread"];
pub const SCAN_HEADER: [&str; 7] = ["witness", "s", "p", "q", "n", "ratio", "scaled"];

#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    pub witness: String,
    pub p: String,
    pub q: String,
    pub count: usize,
    pub min: f64,
    pub max: f64,
}

impl Band {
    pub fn spread(&self) -> f64 {
        self.max / self.min
    }
}

fn exponent_key(row: &SweepRow) -> (f64, f64) {
    let ord = |e: crate::Exponent| if e.is_infinite() { f64::INFINITY } else { e.value() };
    (ord(row.p), ord(row.q))
}

/// Min and max normalised ratio per `(witness, p, q)`.
pub fn band_summary(rows: &[SweepRow]) -> Vec<Band> {
    let mut groups: BTreeMap<(&str, u64, u64), Band> = BTreeMap::new();
    for row in rows {
        let (p, q) = exponent_key(row);
        let key = (row.witness.as_str(), p.to_bits(), q.to_bits());
        let band = groups.entry(key).or_insert_with(|| Band {
            witness: row.witness.to_string(),
            p: row.p.to_string(),
            q: row.q.to_string(),
            count: 0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
        });
        band.count += 1;
        band.min = band.min.min(row.normalized);
        band.max = band.max.max(row.normalized);
    }
    groups.into_values().collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub witness: String,
    pub s: f64,
    pub p: String,
    pub q: String,
    pub n: usize,
    pub ratio: f64,
    pub scaled: f64,
}

/// `n^{-s-1/p+1/q} * ratio` for every trigonometric row, grouped by
/// `(witness, s, p, q)` and ordered by `n`.
pub fn scan_table(rows: &[SweepRow]) -> Vec<ScanRow> {
    let mut out: Vec<(SweepRow, ScanRow)> = rows
        .iter()
        .filter(|r| r.n > 0)
        .map(|r| {
            let scale = (r.n as f64).powf(-r.s - r.p.recip() + r.q.recip());
            (
                r.clone(),
                ScanRow {
                    witness: r.witness.to_string(),
                    s: r.s,
                    p: r.p.to_string(),
                    q: r.q.to_string(),
                    n: r.n,
                    ratio: r.ratio,
                    scaled: r.ratio * scale,
                },
            )
        })
        .collect();
    out.sort_by(|(a, _), (b, _)| {
        let (ap, aq) = exponent_key(a);
        let (bp, bq) = exponent_key(b);
        (a.witness.as_str(), a.s, ap, aq, a.n).partial_cmp(&(b.witness.as_str(), b.s, bp, bq, b.n)).unwrap()
    });
    out.into_iter().map(|(_, s)| s).collect()
}

/// Concatenate the rows of several sweep CSVs.
pub fn load_rows(paths: &[impl AsRef<Path>]) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for p in paths {
        rows.extend(read_csv(p.as_ref())?);
    }
    Ok(rows)
}

pub fn write_report(kind: ReportKind, rows: &[SweepRow], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    write_report_to(kind, rows, file)
}

pub fn write_report_to(kind: ReportKind, rows: &[SweepRow], out: impl std::io::Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    match kind {
        ReportKind::BandSummary => {
            w.write_record(BAND_HEADER).map_err(io)?;
            for b in band_summary(rows) {
                w.write_record([
                    b.witness.clone(),
                    b.p.clone(),
                    b.q.clone(),
                    b.count.to_string(),
                    b.min.to_string(),
                    b.max.to_string(),
                    b.spread().to_string(),
                ])
                .map_err(io)?;
            }
        }
        ReportKind::ScanTable => {
            w.write_record(SCAN_HEADER).map_err(io)?;
            for r in scan_table(rows) {
                w.write_record([
                    r.witness,
                    r.s.to_string(),
                    r.p,
                    r.q,
                    r.n.to_string(),
                    r.ratio.to_string(),
                    r.scaled.to_string(),
                ])
                .map_err(io)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witnesses::WitnessId;
    use crate::Exponent;

    fn row(n: usize, normalized: f64) -> SweepRow {
        SweepRow {
            witness: WitnessId::Exponential,
            n,
            s: 1.0,
            p: Exponent::Finite(1.0),
            q: Exponent::Infinity,
            numerator: 1.0,
            denominator: 1.0,
            ratio: normalized,
            normalized,
            grid_m: 64,
            seed: 0,
        }
    }

    #[test]
    fn single_row_band_is_degenerate() {
        let b = band_summary(&[row(4, 0.3)]);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].min, b[0].max);
        assert_eq!(b[0].spread(), 1.0);
    }

    #[test]
    fn band_is_order_independent() {
        let rows = [row(4, 0.3), row(8, 0.1), row(16, 0.2)];
        let mut rev = rows.to_vec();
        rev.reverse();
        assert_eq!(band_summary(&rows), band_summary(&rev));
        assert!((band_summary(&rows)[0].spread() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn scan_scales_by_envelope_power() {
        let s = scan_table(&[row(4, 2.0)]);
        assert!((s[0].scaled - 2.0 / 4.0f64.powi(2)).abs() < 1e-15);
    }
}
