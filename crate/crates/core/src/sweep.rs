//! Batch sweeps of witness ratios over `(n, s, p, q)` grids, written as CSV.
//!
//! Cells are evaluated in parallel and the output is sorted, so the file is
//! byte-identical for any worker count.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bump::QuadOptions;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::witnesses::{evaluate_witness, WitnessId};

pub const CSV_HEADER: [&str; 11] =
    ["witness", "n", "s", "p", "q", "numerator", "denominator", "ratio", "normalized", "grid_M", "seed"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub command: String,
    pub witnesses: Vec<WitnessId>,
    pub n_list: Vec<usize>,
    pub s_list: Vec<f64>,
    pub pq_pairs: Vec<(Exponent, Exponent)>,
    #[serde(default)]
    pub seed: u64,
    /// quasinorm grid per witness
    #[serde(default)]
    pub grid_overrides: BTreeMap<WitnessId, usize>,
    pub output_dir: PathBuf,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: SweepConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        SweepConfig::from_json(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.command != "sweep" {
            return Err(Error::Config(format!("field `command`: expected \"sweep\", got {:?}", self.command)));
        }
        for (field, empty) in [
            ("witnesses", self.witnesses.is_empty()),
            ("n_list", self.n_list.is_empty()),
            ("s_list", self.s_list.is_empty()),
            ("pq_pairs", self.pq_pairs.is_empty()),
        ] {
            if empty {
                return Err(Error::Config(format!("field `{field}`: must not be empty")));
            }
        }
        if let Some(i) = self.n_list.iter().position(|&n| n == 0) {
            return Err(Error::Config(format!("field `n_list[{i}]`: n must be at least 1")));
        }
        if let Some(i) = self.s_list.iter().position(|&s| !(s > 0.0 && s.is_finite())) {
            return Err(Error::Config(format!("field `s_list[{i}]`: s must be positive, got {}", self.s_list[i])));
        }
        for (i, (p, q)) in self.pq_pairs.iter().enumerate() {
            if p.is_infinite() || !(p.value() > 0.0) || !(p < q) {
                return Err(Error::Config(format!("field `pq_pairs[{i}]`: need 0 < p < q, got p={p}, q={q}")));
            }
        }
        if let Some((w, _)) = self.grid_overrides.iter().find(|(_, &m)| m < 2) {
            return Err(Error::Config(format!("field `grid_overrides.{w}`: grid must have at least 2 nodes")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub witness: WitnessId,
    pub n: usize,
    pub s: f64,
    pub p: Exponent,
    pub q: Exponent,
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
    pub normalized: f64,
    pub grid_m: usize,
    pub seed: u64,
}

impl SweepRow {
    fn key(&self) -> (&'static str, usize, f64, f64, f64) {
        let ord = |e: Exponent| if e.is_infinite() { f64::INFINITY } else { e.value() };
        (self.witness.as_str(), self.n, self.s, ord(self.p), ord(self.q))
    }

    pub fn to_record(&self) -> [String; 11] {
        [
            self.witness.to_string(),
            self.n.to_string(),
            self.s.to_string(),
            self.p.to_string(),
            self.q.to_string(),
            self.numerator.to_string(),
            self.denominator.to_string(),
            self.ratio.to_string(),
            self.normalized.to_string(),
            self.grid_m.to_string(),
            self.seed.to_string(),
        ]
    }

    pub fn from_record(record: &csv::StringRecord, line: u64) -> Result<Self> {
        let field = |i: usize| -> &str { record.get(i).unwrap_or("") };
        let bad = |i: usize, e: &dyn std::fmt::Display| {
            Error::Parse(format!("line {line}, column `{}`: {e} (value {:?})", CSV_HEADER[i], field(i)))
        };
        let float = |i: usize| field(i).parse::<f64>().map_err(|e| bad(i, &e));
        let exponent = |i: usize| field(i).parse::<Exponent>().map_err(|e| bad(i, &e));
        Ok(SweepRow {
            witness: field(0).parse().map_err(|e: Error| bad(0, &e))?,
            n: field(1).parse().map_err(|e| bad(1, &e))?,
            s: float(2)?,
            p: exponent(3)?,
            q: exponent(4)?,
            numerator: float(5)?,
            denominator: float(6)?,
            ratio: float(7)?,
            normalized: float(8)?,
            grid_m: field(9).parse().map_err(|e| bad(9, &e))?,
            seed: field(10).parse().map_err(|e| bad(10, &e))?,
        })
    }
}

fn sort_rows(rows: &mut [SweepRow]) {
    rows.sort_by(|a, b| a.key().partial_cmp(&b.key()).expect("sweep keys are not NaN"));
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    /// cells outside a witness's admissible range
    pub skipped: usize,
}

/// Evaluate every admissible cell. The entire witness ignores `n` and
/// contributes one row per `(s, p, q)` with `n = 0`.
pub fn sweep_rows(config: &SweepConfig, workers: Option<usize>) -> Result<SweepOutcome> {
    config.validate()?;
    let mut cells = Vec::new();
    for &w in &config.witnesses {
        let ns: Vec<usize> = if w == WitnessId::EntireBump { vec![0] } else { config.n_list.clone() };
        for &n in &ns {
            for &s in &config.s_list {
                for &(p, q) in &config.pq_pairs {
                    cells.push((w, n, s, p, q));
                }
            }
        }
    }
    let quad = QuadOptions::default();
    let run = || -> Vec<Result<Option<SweepRow>>> {
        cells
            .par_iter()
            .map(|&(w, n, s, p, q)| {
                match evaluate_witness(w, n, s, p, q, config.grid_overrides.get(&w).copied(), &quad) {
                    Ok(r) => Ok(Some(SweepRow {
                        witness: w,
                        n,
                        s,
                        p,
                        q,
                        numerator: r.numerator,
                        denominator: r.denominator,
                        ratio: r.ratio,
                        normalized: r.normalized,
                        grid_m: r.grid(),
                        seed: config.seed,
                    })),
                    Err(Error::Precondition(_)) => Ok(None),
                    Err(Error::Domain(_)) if w == WitnessId::EntireBump && s < 2.0 => Ok(None),
                    Err(e) => Err(e),
                }
            })
            .collect()
    };
    let results = match workers {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(run),
        None => run(),
    };
    let mut rows = Vec::with_capacity(results.len());
    let mut skipped = 0;
    for r in results {
        match r? {
            Some(row) => rows.push(row),
            None => skipped += 1,
        }
    }
    sort_rows(&mut rows);
    Ok(SweepOutcome { rows, skipped })
}

pub fn write_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for row in rows {
        w.write_record(row.to_record()).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Rows of one sweep CSV; the header must match [`CSV_HEADER`] exactly.
pub fn read_csv(path: &Path) -> Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let header = r.headers().map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?.clone();
    for (i, want) in CSV_HEADER.iter().enumerate() {
        match header.get(i) {
            Some(got) if got == *want => {}
            Some(got) => {
                return Err(Error::Parse(format!("{}: column {} is `{got}`, expected `{want}`", path.display(), i + 1)))
            }
            None => return Err(Error::Parse(format!("{}: missing column `{want}`", path.display()))),
        }
    }
    if header.len() > CSV_HEADER.len() {
        return Err(Error::Parse(format!(
            "{}: unexpected column `{}`",
            path.display(),
            header.get(CSV_HEADER.len()).unwrap_or("")
        )));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        rows.push(SweepRow::from_record(&rec, i as u64 + 2)?);
    }
    Ok(rows)
}

/// Run the sweep and write `<output_dir>/sweep.csv`.
pub fn run_sweep(config: &SweepConfig, workers: Option<usize>) -> Result<(PathBuf, SweepOutcome)> {
    let outcome = sweep_rows(config, workers)?;
    fs::create_dir_all(&config.output_dir)
        .map_err(|e| Error::Io(format!("{}: {e}", config.output_dir.display())))?;
    let path = config.output_dir.join("sweep.csv");
    write_csv(&outcome.rows, &path)?;
    Ok((path, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(text: &str) -> Result<SweepConfig> {
        SweepConfig::from_json(text)
    }

    const MINIMAL: &str = r#"{"command": "sweep", "witnesses": ["exponential"], "n_list": [4], "s_list": [2],
        "pq_pairs": [[1, "inf"]], "seed": 7, "output_dir": "out"}"#;

    #[test]
    fn minimal_config_gives_one_row() {
        let out = sweep_rows(&config(MINIMAL).unwrap(), Some(1)).unwrap();
        assert_eq!(out.rows.len(), 1);
        let row = &out.rows[0];
        assert_eq!(row.q, Exponent::Infinity);
        assert!((row.ratio - 16.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-12);
    }

    #[test]
    fn unknown_field_is_rejected_with_location() {
        let text = MINIMAL.replace("\"seed\": 7", "\"seed\": 7, \"colour\": 1");
        let err = config(&text).unwrap_err().to_string();
        assert!(err.contains("colour") && err.contains("line"), "{err}");
    }

    #[test]
    fn bad_pair_names_the_field() {
        let text = MINIMAL.replace("[[1, \"inf\"]]", "[[1, \"inf\"], [2, 1]]");
        let err = config(&text).unwrap_err().to_string();
        assert!(err.contains("pq_pairs[1]"), "{err}");
    }

    #[test]
    fn rows_are_sorted_and_round_trip() {
        let text = r#"{"command": "sweep", "witnesses": ["modulated_jackson", "exponential"], "n_list": [64, 8],
            "s_list": [2, 1], "pq_pairs": [[1, 2], ["1/2", 1]], "output_dir": "out"}"#;
        let out = sweep_rows(&config(text).unwrap(), None).unwrap();
        assert!(out.rows.windows(2).all(|w| w[0].key() <= w[1].key()));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.csv");
        write_csv(&out.rows, &path).unwrap();
        assert_eq!(read_csv(&path).unwrap(), out.rows);
    }
}
