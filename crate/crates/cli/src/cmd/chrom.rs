use std::io::Write;

use clap::Args;
use mkcs::chrom::{default_margin, psi_exact, psi_lower_bound, psi_reduced, ChromError, PsiResult};
use mkcs::heur::ExactCaps;
use mkcs::relax::{BoundModel, BqpOptions};
use serde::Serialize;

use super::{with_output, write_json, SolverArgs};
use crate::{CliError, GraphSource, ModelChoice};

/// Lower bound on the chromatic number from the first k whose bound reaches n
#[derive(Args, Debug, Clone)]
pub struct ChromArgs {
    /// DIMACS path, `family:<name>:<params>` or `bench:<name>`, optionally with `:complement`
    #[arg(long)]
    pub graph: String,
    /// Bound model, a `*_red` model, or `exact` for the branch-and-bound oracle
    #[arg(long, default_value = "theta1")]
    pub model: String,
    /// Largest k to try
    #[arg(long, default_value_t = 10)]
    pub kmax: usize,
    /// A bound counts as below n only when at most n minus this margin
    /// [default: max(0.01, 10 eps n)]
    #[arg(long)]
    pub margin: Option<f64>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Print JSON instead of the trace
    #[arg(long)]
    pub json: bool,
}

#[derive(Serialize)]
struct ChromReport<'a> {
    graph: &'a str,
    n: u128,
    #[serde(flatten)]
    result: &'a PsiResult,
}

fn failed(e: ChromError) -> CliError {
    match e {
        ChromError::InvalidParameters(m) => CliError::Usage(m),
        other => CliError::Failed(other.to_string()),
    }
}

pub fn run(args: &ChromArgs) -> Result<(), CliError> {
    let source: GraphSource = args.graph.parse()?;
    if args.kmax == 0 {
        return Err(CliError::Usage("kmax must be at least 1".into()));
    }
    let opts = args.solver.solve_options()?;
    // the loosest automatic tolerance sets the default noise margin
    let margin_for = |n: usize| {
        args.margin
            .unwrap_or_else(|| default_margin(opts.eps.unwrap_or(1e-5), n))
    };

    let (n, result): (u128, PsiResult) = if args.model == "exact" {
        let g = source.load()?;
        let r = psi_exact(&g, args.kmax, ExactCaps::default()).map_err(failed)?;
        (g.n() as u128, r)
    } else {
        match args.model.parse::<ModelChoice>()? {
            ModelChoice::Reduced(m) => {
                let spec = source.scheme()?;
                let n = spec.n;
                let r = psi_reduced(&spec, m, args.kmax, margin_for(n as usize), &opts)
                    .map_err(failed)?;
                (n, r)
            }
            ModelChoice::Full(m) => {
                let g = source.load()?;
                let margin = margin_for(g.n());
                let bqp = BqpOptions {
                    stop_below: (m == BoundModel::Theta1Bqp).then(|| g.n() as f64 - margin),
                    ..args.solver.bqp_options()
                };
                let r = psi_lower_bound(&g, m, args.kmax, margin, &opts, &bqp).map_err(failed)?;
                (g.n() as u128, r)
            }
        }
    };

    with_output(None, |w: &mut dyn Write| {
        if args.json {
            let doc = ChromReport {
                graph: &source.label,
                n,
                result: &result,
            };
            return write_json(&doc, w);
        }
        writeln!(
            w,
            "graph {} (n = {n}), model {}",
            source.label, result.model
        )?;
        for s in &result.trace {
            writeln!(
                w,
                "k = {}: bound {:.4} ({})",
                s.k,
                s.bound,
                s.verdict.as_str()
            )?;
        }
        writeln!(w, "psi = {}", result.psi)
    })
}
