//! Manifest-driven batch runs. Jobs run on `--jobs` worker threads; rows are
//! written in manifest order whatever the completion order.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::Args;
use serde::{Deserialize, Serialize};

use super::{emit_rows, solve_options, OutputArgs};
use crate::job::{error_rows, Job, RunOptions};
use crate::{BoundReport, CliError, GraphSource, ModelChoice};

/// Runs every job of a JSON manifest
#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    /// Manifest file
    pub manifest: PathBuf,
    /// Jobs evaluated in parallel
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Solver settings; job-level values override the manifest-level ones.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    pub eps: Option<f64>,
    pub max_iter: Option<usize>,
    pub time_limit_s: Option<f64>,
    /// Cutting-plane rounds for theta1_bqp.
    pub rounds: Option<usize>,
    /// Fill the lb column from the tabu heuristic.
    pub lb: Option<bool>,
}

impl JobOptions {
    fn or(&self, base: &JobOptions) -> JobOptions {
        JobOptions {
            eps: self.eps.or(base.eps),
            max_iter: self.max_iter.or(base.max_iter),
            time_limit_s: self.time_limit_s.or(base.time_limit_s),
            rounds: self.rounds.or(base.rounds),
            lb: self.lb.or(base.lb),
        }
    }

    fn run_options(&self) -> Result<RunOptions, CliError> {
        let mut o = RunOptions {
            solve: solve_options(self.eps, self.max_iter, self.time_limit_s)?,
            lb: self.lb.unwrap_or(false),
            ..RunOptions::default()
        };
        if let Some(r) = self.rounds {
            o.bqp.rounds = r;
        }
        Ok(o)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestJob {
    /// Graph source; relative paths resolve against the manifest's directory.
    pub graph: String,
    pub k: Vec<usize>,
    pub models: Vec<String>,
    #[serde(default)]
    pub options: JobOptions,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub options: JobOptions,
    #[serde(default)]
    pub jobs: Vec<ManifestJob>,
    /// Output file used when `--out` is absent.
    pub output: Option<PathBuf>,
}

impl Manifest {
    /// A blank file is an empty manifest.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        if text.trim().is_empty() {
            return Ok(Manifest::default());
        }
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("manifest: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelSummary {
    pub model: String,
    pub rows: usize,
    pub errors: usize,
    pub time_s: f64,
}

/// JSON form of a benchmark run.
#[derive(Debug, Serialize)]
pub struct BenchDocument<'a> {
    pub rows: &'a [BoundReport],
    pub summary: &'a [ModelSummary],
}

/// Per-model totals in order of first appearance.
pub fn summarize(rows: &[BoundReport]) -> Vec<ModelSummary> {
    let mut order: Vec<String> = Vec::new();
    let mut acc: BTreeMap<String, ModelSummary> = BTreeMap::new();
    for r in rows {
        let s = acc.entry(r.model.clone()).or_insert_with(|| {
            order.push(r.model.clone());
            ModelSummary {
                model: r.model.clone(),
                rows: 0,
                errors: 0,
                time_s: 0.0,
            }
        });
        s.rows += 1;
        s.errors += usize::from(r.is_error());
        s.time_s += r.time_s;
    }
    order
        .into_iter()
        .map(|m| acc.remove(&m).expect("summarized model"))
        .collect()
}

/// Resolves a manifest job, or returns the error rows that stand in for it.
fn prepare(mj: &ManifestJob, base: &JobOptions, dir: &Path) -> Result<Job, Vec<BoundReport>> {
    let build = || -> Result<Job, CliError> {
        let source = mj.graph.parse::<GraphSource>()?.relative_to(dir);
        let models = mj
            .models
            .iter()
            .map(|m| m.parse::<ModelChoice>())
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(&k) = mj.k.iter().find(|&&k| k == 0) {
            return Err(CliError::Usage(format!("k must be positive, got {k}")));
        }
        Ok(Job {
            source: GraphSource {
                label: mj.graph.clone(),
                ..source
            },
            ks: mj.k.clone(),
            models,
            opts: mj.options.or(base).run_options()?,
        })
    };
    build().map_err(|e| error_rows(&mj.graph, &mj.k, mj.models.iter().map(String::as_str), &e))
}

/// Runs the jobs on `workers` threads and concatenates rows in job order.
pub fn run_jobs(jobs: &[Result<Job, Vec<BoundReport>>], workers: usize) -> Vec<BoundReport> {
    let slots: Vec<Mutex<Option<Vec<BoundReport>>>> =
        jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers.clamp(1, jobs.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let rows = match job {
                    Ok(job) => job.run().unwrap_or_else(|e| job.error_rows(&e)),
                    Err(rows) => rows.clone(),
                };
                *slots[i].lock().expect("result slot") = Some(rows);
            });
        }
    });
    slots
        .into_iter()
        .flat_map(|s| s.into_inner().expect("result slot").unwrap_or_default())
        .collect()
}

pub fn run(args: &BenchArgs) -> Result<(), CliError> {
    if args.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let text = fs::read_to_string(&args.manifest).map_err(|e| CliError::io(&args.manifest, e))?;
    let manifest = Manifest::parse(&text)?;
    let dir = args.manifest.parent().unwrap_or(Path::new("."));
    let jobs: Vec<_> = manifest
        .jobs
        .iter()
        .map(|j| prepare(j, &manifest.options, dir))
        .collect();
    let rows = run_jobs(&jobs, args.jobs);
    let summary = summarize(&rows);

    let out_path = args
        .output
        .out
        .clone()
        .or_else(|| manifest.output.as_ref().map(|p| dir.join(p)));
    let doc = BenchDocument {
        rows: &rows,
        summary: &summary,
    };
    emit_rows(&rows, &args.output, out_path.as_deref(), &doc)?;
    if !summary.is_empty() {
        eprintln!("model              rows  errors     time_s");
        for s in &summary {
            eprintln!(
                "{:<18} {:>4} {:>7} {:>10.2}",
                s.model, s.rows, s.errors, s.time_s
            );
        }
    }
    for r in rows.iter().filter(|r| r.is_error()) {
        eprintln!(
            "{} k={} {}: {}",
            r.graph,
            r.k,
            r.model,
            r.message.as_deref().unwrap_or(&r.status)
        );
    }
    Ok(())
}
