use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use mkcs::graph::{write_dimacs, GraphFamily};

use super::with_output;
use crate::{CliError, GraphSource};

/// Writes a generated graph in DIMACS format
#[derive(Args, Debug, Clone)]
pub struct GenArgs {
    /// kneser (--v --d), johnson (--v --d --q), hamming or hamming_le (--d --q --j), complete (--k)
    #[arg(long, conflicts_with = "graph")]
    pub family: Option<String>,
    #[arg(long)]
    pub v: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub j: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    /// Any graph source instead of the family flags, e.g. `bench:queen6_6`
    #[arg(long, required_unless_present = "family")]
    pub graph: Option<String>,
    /// Write the complement
    #[arg(long)]
    pub complement: bool,
    /// Output file [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn need(value: Option<u32>, flag: &str, family: &str) -> Result<u32, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("family {family} needs --{flag}")))
}

fn family_from_flags(args: &GenArgs, name: &str) -> Result<GraphFamily, CliError> {
    let f = match name {
        "kneser" => GraphFamily::Kneser {
            v: need(args.v, "v", name)?,
            d: need(args.d, "d", name)?,
        },
        "johnson" => GraphFamily::Johnson {
            v: need(args.v, "v", name)?,
            d: need(args.d, "d", name)?,
            q: need(args.q, "q", name)?,
        },
        "hamming" | "hamming_le" => {
            let (d, q, j) = (
                need(args.d, "d", name)?,
                need(args.q, "q", name)?,
                need(args.j, "j", name)?,
            );
            if name == "hamming" {
                GraphFamily::Hamming { d, q, j }
            } else {
                GraphFamily::HammingLe { d, q, j }
            }
        }
        "complete" => GraphFamily::CompleteK {
            k: need(args.k, "k", name)?,
        },
        other => return Err(CliError::Usage(format!("unknown family '{other}'"))),
    };
    f.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(f)
}

pub fn run(args: &GenArgs) -> Result<(), CliError> {
    let g = match (&args.family, &args.graph) {
        (Some(name), _) => family_from_flags(args, name)?
            .generate()
            .map_err(|e| CliError::Usage(e.to_string()))?,
        (None, Some(src)) => src.parse::<GraphSource>()?.load()?,
        (None, None) => return Err(CliError::Usage("give --family or --graph".into())),
    };
    let g = if args.complement { g.complement() } else { g };
    let text = write_dimacs(&g);
    with_output(args.out.as_deref(), |w: &mut dyn Write| {
        w.write_all(text.as_bytes())
    })?;
    if let Some(p) = &args.out {
        eprintln!("wrote {}: {} vertices, {} edges", p.display(), g.n(), g.m());
    }
    Ok(())
}
