//! One row per `(graph, k, model)`: CSV with values rounded to two decimals
//! half-up, JSON at full precision.

use std::io::{Read, Write};

use mkcs::relax::CutRound;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const CSV_HEADER: [&str; 11] = [
    "graph",
    "n",
    "m",
    "density_pct",
    "k",
    "model",
    "bound",
    "lb",
    "time_s",
    "iters",
    "status",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub graph: String,
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub density_pct: Option<f64>,
    pub k: usize,
    pub model: String,
    pub bound: Option<f64>,
    pub bound_2dp: Option<f64>,
    pub lb: Option<usize>,
    /// Solver wall time, model construction excluded.
    pub time_s: f64,
    pub iterations: usize,
    /// Solver status, or `error:<kind>` for a failed row.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut_rounds: Option<Vec<CutRound>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

/// Two decimals, ties toward `+∞`. The nudge absorbs binary representation
/// error so that `35.805` rounds up.
pub fn round2(x: f64) -> f64 {
    let scaled = x * 100.0;
    let nudged = scaled + scaled.abs() * 1e-12;
    (nudged + 0.5).floor() / 100.0
}

fn fmt2(x: f64) -> String {
    format!("{:.2}", round2(x))
}

impl BoundReport {
    /// Graph columns and identifiers; value columns empty.
    pub fn blank(graph: &str, k: usize, model: &str) -> Self {
        BoundReport {
            graph: graph.to_string(),
            n: None,
            m: None,
            density_pct: None,
            k,
            model: model.to_string(),
            bound: None,
            bound_2dp: None,
            lb: None,
            time_s: 0.0,
            iterations: 0,
            status: String::new(),
            cut_rounds: None,
            message: None,
        }
    }

    pub fn set_bound(&mut self, v: f64) {
        self.bound = Some(v);
        self.bound_2dp = Some(round2(v));
    }

    pub fn is_error(&self) -> bool {
        self.status.starts_with("error:")
    }

    /// The row as it reads back from CSV.
    pub fn rounded(&self) -> Self {
        BoundReport {
            density_pct: self.density_pct.map(round2),
            bound: self.bound_2dp,
            time_s: round2(self.time_s),
            cut_rounds: None,
            message: None,
            ..self.clone()
        }
    }

    fn csv_fields(&self) -> [String; 11] {
        let opt = |v: Option<String>| v.unwrap_or_default();
        [
            self.graph.clone(),
            opt(self.n.map(|v| v.to_string())),
            opt(self.m.map(|v| v.to_string())),
            opt(self.density_pct.map(fmt2)),
            self.k.to_string(),
            self.model.clone(),
            opt(self.bound.map(fmt2)),
            opt(self.lb.map(|v| v.to_string())),
            fmt2(self.time_s),
            self.iterations.to_string(),
            self.status.clone(),
        ]
    }

    fn from_csv_fields(r: &csv::StringRecord) -> Result<Self, String> {
        if r.len() != CSV_HEADER.len() {
            return Err(format!(
                "expected {} columns, got {}",
                CSV_HEADER.len(),
                r.len()
            ));
        }
        fn opt<T: std::str::FromStr>(s: &str, col: &str) -> Result<Option<T>, String> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse().map(Some).map_err(|_| format!("bad {col} '{s}'"))
            }
        }
        fn req<T: std::str::FromStr>(s: &str, col: &str) -> Result<T, String> {
            s.parse().map_err(|_| format!("bad {col} '{s}'"))
        }
        let bound: Option<f64> = opt(&r[6], "bound")?;
        Ok(BoundReport {
            graph: r[0].to_string(),
            n: opt(&r[1], "n")?,
            m: opt(&r[2], "m")?,
            density_pct: opt(&r[3], "density_pct")?,
            k: req(&r[4], "k")?,
            model: r[5].to_string(),
            bound,
            bound_2dp: bound,
            lb: opt(&r[7], "lb")?,
            time_s: req(&r[8], "time_s")?,
            iterations: req(&r[9], "iters")?,
            status: r[10].to_string(),
            cut_rounds: None,
            message: None,
        })
    }
}

pub fn write_csv<W: Write>(rows: &[BoundReport], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.csv_fields())?;
    }
    w.flush()
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<BoundReport>, CliError> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers().map_err(|e| CliError::Input(e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(CliError::Input(format!("unexpected CSV header {header:?}")));
    }
    rd.records()
        .enumerate()
        .map(|(i, rec)| {
            let rec = rec.map_err(|e| CliError::Input(e.to_string()))?;
            BoundReport::from_csv_fields(&rec)
                .map_err(|e| CliError::Input(format!("row {}: {e}", i + 1)))
        })
        .collect()
}
