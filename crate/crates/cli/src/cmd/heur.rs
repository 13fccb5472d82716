use std::io::Write;
use std::time::Instant;

use clap::{Args, ValueEnum};
use mkcs::heur::{
    exact_alpha_k, greedy_coloring, product_heuristic_lb, tabu_lb, ColorAssignment, TabuParams,
};
use serde::Serialize;

use super::{with_output, write_json};
use crate::{CliError, GraphSource};

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Tabu,
    Greedy,
    /// Min-degree stable set of the product with a complete graph
    Product,
    /// Branch and bound; small graphs only
    Exact,
}

#[derive(Serialize)]
struct HeurReport<'a> {
    graph: &'a str,
    n: usize,
    m: usize,
    k: usize,
    method: &'a str,
    lb: usize,
    time_s: f64,
    /// Vertices of each color class, 0-based.
    classes: Vec<Vec<usize>>,
}

/// Lower bounds from k-colorable induced subgraphs
#[derive(Args, Debug, Clone)]
pub struct HeurArgs {
    /// DIMACS path, `family:<name>:<params>` or `bench:<name>`, optionally with `:complement`
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Method::Tabu)]
    pub method: Method,
    /// Tabu random seed
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Tabu tenure
    #[arg(long, default_value_t = 10)]
    pub tenure: usize,
    /// Tabu iteration cap
    #[arg(long, default_value_t = 20_000)]
    pub max_iter: usize,
    /// Tabu iterations without improvement before stopping
    #[arg(long, default_value_t = 2_000)]
    pub stall: usize,
    /// Also print the color classes
    #[arg(long)]
    pub classes: bool,
    /// Print JSON
    #[arg(long)]
    pub json: bool,
}

pub fn run(args: &HeurArgs) -> Result<(), CliError> {
    if args.k == 0 {
        return Err(CliError::Usage("k must be at least 1".into()));
    }
    let source: GraphSource = args.graph.parse()?;
    let g = source.load()?;
    let start = Instant::now();
    let fail = |e: mkcs::heur::HeurError| CliError::Failed(e.to_string());
    let a: ColorAssignment = match args.method {
        Method::Tabu => {
            let params = TabuParams {
                max_iterations: args.max_iter,
                tenure: args.tenure,
                rng_seed: args.seed,
                stall_limit: args.stall,
            };
            tabu_lb(&g, args.k, &params).map_err(fail)?
        }
        Method::Greedy => greedy_coloring(&g, args.k),
        Method::Product => product_heuristic_lb(&g, args.k).map_err(fail)?,
        Method::Exact => exact_alpha_k(&g, args.k).map_err(fail)?.1,
    };
    let time_s = start.elapsed().as_secs_f64();
    let method = format!("{:?}", args.method).to_lowercase();

    with_output(None, |w: &mut dyn Write| {
        if args.json {
            let doc = HeurReport {
                graph: &source.label,
                n: g.n(),
                m: g.m(),
                k: args.k,
                method: &method,
                lb: a.value(),
                time_s,
                classes: a.classes(),
            };
            return write_json(&doc, w);
        }
        writeln!(w, "lb = {}", a.value())?;
        writeln!(
            w,
            "graph {} (n = {}, m = {}), k = {}, {method}, {time_s:.2}s",
            source.label,
            g.n(),
            g.m(),
            args.k
        )?;
        if args.classes {
            for (c, class) in a.classes().iter().enumerate() {
                let vs: Vec<String> = class.iter().map(|v| (v + 1).to_string()).collect();
                writeln!(w, "color {}: {}", c + 1, vs.join(" "))?;
            }
        }
        Ok(())
    })
}
