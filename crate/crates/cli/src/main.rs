use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mkcs_cli::cmd::{bench, bound, chrom, gen, heur};

/// SDP upper bounds and heuristic lower bounds for the maximum k-colorable subgraph problem
#[derive(Parser, Debug)]
#[command(name = "mkcs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    Bound(bound::BoundArgs),
    Chrom(chrom::ChromArgs),
    Heur(heur::HeurArgs),
    Gen(gen::GenArgs),
    Bench(bench::BenchArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Bound(a) => bound::run(a),
        Command::Chrom(a) => chrom::run(a),
        Command::Heur(a) => heur::run(a),
        Command::Gen(a) => gen::run(a),
        Command::Bench(a) => bench::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
