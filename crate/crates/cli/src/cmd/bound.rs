use clap::Args;

use super::{emit_rows, OutputArgs, SolverArgs};
use crate::job::{Job, RunOptions};
use crate::model::{parse_ks, parse_models};
use crate::{CliError, GraphSource};

/// Upper bounds on the largest induced k-colorable subgraph
#[derive(Args, Debug, Clone)]
pub struct BoundArgs {
    /// DIMACS path, `family:<name>:<params>` or `bench:<name>`, optionally with `:complement`
    #[arg(long)]
    pub graph: String,
    /// Comma-separated color counts
    #[arg(long)]
    pub k: String,
    /// Comma-separated model names; `*_red` models need a family source
    #[arg(long, default_value = "theta1")]
    pub model: String,
    /// Add BQP cutting planes to theta1
    #[arg(long)]
    pub bqp: bool,
    /// Fill the lb column with the tabu lower bound
    #[arg(long)]
    pub lb: bool,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn run(args: &BoundArgs) -> Result<(), CliError> {
    let source: GraphSource = args.graph.parse()?;
    let mut models = parse_models(&args.model)?;
    if args.bqp {
        models = models.into_iter().map(|m| m.with_cuts()).collect();
    }
    let job = Job {
        source,
        ks: parse_ks(&args.k)?,
        models,
        opts: RunOptions {
            solve: args.solver.solve_options()?,
            bqp: args.solver.bqp_options(),
            lb: args.lb,
            ..RunOptions::default()
        },
    };
    let rows = job.run()?;
    emit_rows(&rows, &args.output, args.output.out.as_deref(), &rows)?;
    let failures: Vec<String> = rows
        .iter()
        .filter(|r| r.is_error())
        .map(|r| {
            format!(
                "k={} {}: {}",
                r.k,
                r.model,
                r.message.as_deref().unwrap_or("failed")
            )
        })
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(failures.join("; ")))
    }
}
