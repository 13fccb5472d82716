//! Evaluation of one `(graph, k list, model list)` job into report rows.

use std::time::Instant;

use mkcs::conic::SolveOptions;
use mkcs::graph::Graph;
use mkcs::heur::{tabu_lb, TabuParams};
use mkcs::relax::{compute_bound, BqpOptions};
use mkcs::scheme::{reduced_bound, SchemeSpec};

use crate::{BoundReport, CliError, GraphSource, ModelChoice};

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub solve: SolveOptions,
    pub bqp: BqpOptions,
    /// Fill the `lb` column from the tabu heuristic.
    pub lb: bool,
    pub tabu: TabuParams,
}

#[derive(Debug, Clone)]
pub struct Job {
    pub source: GraphSource,
    pub ks: Vec<usize>,
    pub models: Vec<ModelChoice>,
    pub opts: RunOptions,
}

struct Shape {
    n: u64,
    m: u64,
    density: Option<f64>,
}

fn graph_shape(g: &Graph) -> Shape {
    Shape {
        n: g.n() as u64,
        m: g.m() as u64,
        density: g.density_percent().ok(),
    }
}

fn scheme_shape(spec: &SchemeSpec) -> Shape {
    let n = spec.n_f64();
    let val: f64 = spec
        .valencies_f64()
        .iter()
        .enumerate()
        .filter(|&(i, _)| spec.is_edge_class(i))
        .map(|(_, v)| v)
        .sum();
    Shape {
        n: spec.n as u64,
        m: (n * val / 2.0).round() as u64,
        density: (n > 1.0).then(|| 100.0 * val / (n - 1.0)),
    }
}

impl Job {
    /// Every `(k, model)` pair becomes a row. Model failures become
    /// `error:model` rows; an unusable source is returned as an error.
    pub fn run(&self) -> Result<Vec<BoundReport>, CliError> {
        let needs_graph = self
            .models
            .iter()
            .any(|m| matches!(m, ModelChoice::Full(_)));
        let needs_scheme = self
            .models
            .iter()
            .any(|m| matches!(m, ModelChoice::Reduced(_)));
        let spec = needs_scheme.then(|| self.source.scheme()).transpose()?;
        let graph = if needs_graph {
            Some(self.source.load()?)
        } else if self.opts.lb {
            self.source.load().ok()
        } else {
            None
        };
        let shape = match (&graph, &spec) {
            (Some(g), _) => graph_shape(g),
            (None, Some(s)) => scheme_shape(s),
            (None, None) => return Ok(Vec::new()),
        };

        let mut rows = Vec::with_capacity(self.ks.len() * self.models.len());
        for &k in &self.ks {
            let lb = match (&graph, self.opts.lb) {
                (Some(g), true) => tabu_lb(g, k, &self.opts.tabu).ok().map(|a| a.value()),
                _ => None,
            };
            for &model in &self.models {
                let mut row = BoundReport::blank(&self.source.label, k, model.name());
                row.n = Some(shape.n);
                row.m = Some(shape.m);
                row.density_pct = shape.density;
                row.lb = lb;
                match model {
                    ModelChoice::Full(m) => {
                        let g = graph.as_ref().expect("graph loaded for general models");
                        let start = Instant::now();
                        match compute_bound(g, k, m, &self.opts.solve, &self.opts.bqp) {
                            Ok(out) => {
                                row.set_bound(out.value);
                                row.iterations = out.iterations();
                                row.time_s = match out.result {
                                    Some(_) => out.solve_time(),
                                    None => start.elapsed().as_secs_f64(),
                                };
                                row.status = out
                                    .result
                                    .as_ref()
                                    .map_or("optimal", |r| r.status.as_str())
                                    .to_string();
                                row.cut_rounds = out.cut_rounds;
                            }
                            Err(e) => {
                                row.status = "error:model".into();
                                row.message = Some(e.to_string());
                            }
                        }
                    }
                    ModelChoice::Reduced(m) => {
                        let s = spec.as_ref().expect("scheme built for collapsed models");
                        match reduced_bound(s, m, k, &self.opts.solve) {
                            Ok(r) => {
                                row.set_bound(r.value);
                                row.iterations = r.result.iterations;
                                row.time_s = r.result.solve_time;
                                row.status = r.result.status.as_str().to_string();
                            }
                            Err(e) => {
                                row.status = "error:model".into();
                                row.message = Some(e.to_string());
                            }
                        }
                    }
                }
                rows.push(row);
            }
        }
        Ok(rows)
    }

    /// Rows carrying `err` for every `(k, model)` pair.
    pub fn error_rows(&self, err: &CliError) -> Vec<BoundReport> {
        error_rows(
            &self.source.label,
            &self.ks,
            self.models.iter().map(|m| m.name()),
            err,
        )
    }
}

/// One row per `(k, model)` with status `error:<kind>` and the message.
pub fn error_rows<'a>(
    graph: &str,
    ks: &[usize],
    models: impl Iterator<Item = &'a str> + Clone,
    err: &CliError,
) -> Vec<BoundReport> {
    let mut rows = Vec::new();
    for &k in ks {
        for m in models.clone() {
            let mut row = BoundReport::blank(graph, k, m);
            row.status = err.status().to_string();
            row.message = Some(err.to_string());
            rows.push(row);
        }
    }
    rows
}
