pub mod bench;
pub mod bound;
pub mod chrom;
pub mod gen;
pub mod heur;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::Args;
use mkcs::conic::SolveOptions;
use mkcs::relax::BqpOptions;
use serde::Serialize;

use crate::report::write_csv;
use crate::{BoundReport, CliError};

#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    /// Solver tolerance [default: 1e-6, or 1e-5 when a PSD block exceeds order 150]
    #[arg(long)]
    pub eps: Option<f64>,
    /// Iteration cap per conic solve
    #[arg(long, default_value_t = 200_000)]
    pub max_iter: usize,
    /// Wall-clock cap per conic solve, in seconds
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Cutting-plane rounds for theta1_bqp
    #[arg(long, default_value_t = 4)]
    pub rounds: usize,
}

impl SolverArgs {
    pub fn solve_options(&self) -> Result<SolveOptions, CliError> {
        solve_options(self.eps, Some(self.max_iter), self.time_limit)
    }

    pub fn bqp_options(&self) -> BqpOptions {
        BqpOptions {
            rounds: self.rounds,
            ..BqpOptions::default()
        }
    }
}

pub fn solve_options(
    eps: Option<f64>,
    max_iter: Option<usize>,
    time_limit: Option<f64>,
) -> Result<SolveOptions, CliError> {
    let mut o = SolveOptions::default();
    if let Some(e) = eps {
        if !(e > 0.0 && e < 1.0) {
            return Err(CliError::Usage(format!("eps must lie in (0, 1), got {e}")));
        }
        o = o.with_eps(e);
    }
    if let Some(m) = max_iter {
        if m == 0 {
            return Err(CliError::Usage("max-iter must be positive".into()));
        }
        o.max_iter = m;
    }
    if let Some(t) = time_limit {
        o.time_limit = Some(
            Duration::try_from_secs_f64(t)
                .map_err(|_| CliError::Usage(format!("bad time limit {t}")))?,
        );
    }
    Ok(o)
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write results to this file; a `.json` extension selects JSON
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print JSON instead of CSV
    #[arg(long)]
    pub json: bool,
}

impl OutputArgs {
    fn wants_json(&self, path: Option<&Path>) -> bool {
        self.json || path.is_some_and(|p| p.extension().is_some_and(|e| e == "json"))
    }
}

/// Writes through `write` to the file `path`, or to stdout.
pub fn with_output(
    path: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::io(p, e))?;
            let mut w = BufWriter::new(file);
            write(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| CliError::io(p, e))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w)
                .and_then(|_| w.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

pub fn write_json<T: Serialize + ?Sized>(value: &T, w: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)
}

/// Report rows as CSV, or `json_doc` as JSON.
pub fn emit_rows<J: Serialize>(
    rows: &[BoundReport],
    out: &OutputArgs,
    path: Option<&Path>,
    json_doc: &J,
) -> Result<(), CliError> {
    if out.wants_json(path) {
        with_output(path, |w| write_json(json_doc, w))
    } else {
        with_output(path, |w| write_csv(rows, w))
    }
}
