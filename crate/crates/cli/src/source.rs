//! Where a graph comes from: a DIMACS file, a generator family
//! `family:<name>:<comma params>`, or a named benchmark `bench:<name>`.
//! Family and benchmark sources accept a trailing `:complement`.

use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use mkcs::graph::{
    cfat, insertions, keller, mycielski_family, parse_dimacs, petersen, queen, Graph, GraphFamily,
};
use mkcs::scheme::SchemeSpec;

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum SourceKind {
    File(PathBuf),
    Family(GraphFamily),
    Bench(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphSource {
    /// The source as written by the user; used as the report's graph name.
    pub label: String,
    pub kind: SourceKind,
    pub complement: bool,
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn params<const N: usize>(name: &str, raw: &str) -> Result<[u32; N], CliError> {
    let vals: Vec<u32> = raw
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            CliError::Usage(format!(
                "family {name}: parameters must be integers, got '{raw}'"
            ))
        })?;
    vals.try_into().map_err(|v: Vec<u32>| {
        CliError::Usage(format!(
            "family {name} takes {N} parameters, got {}",
            v.len()
        ))
    })
}

/// Parses `<name>:<params>` after the `family:` prefix.
pub fn parse_family(name: &str, raw: &str) -> Result<GraphFamily, CliError> {
    let family = match name {
        "kneser" => {
            let [v, d] = params(name, raw)?;
            GraphFamily::Kneser { v, d }
        }
        "johnson" => {
            let [v, d, q] = params(name, raw)?;
            GraphFamily::Johnson { v, d, q }
        }
        "hamming" => {
            let [d, q, j] = params(name, raw)?;
            GraphFamily::Hamming { d, q, j }
        }
        "hamming_le" => {
            let [d, q, j] = params(name, raw)?;
            GraphFamily::HammingLe { d, q, j }
        }
        "complete" => {
            let [k] = params(name, raw)?;
            GraphFamily::CompleteK { k }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown family '{other}' (expected kneser, johnson, hamming, hamming_le, complete)"
            )))
        }
    };
    family
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(family)
}

impl FromStr for GraphSource {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let (body, complement) = match s.strip_suffix(":complement") {
            Some(b) if b.starts_with("family:") || b.starts_with("bench:") => (b, true),
            _ => (s, false),
        };
        let kind = if let Some(rest) = body.strip_prefix("family:") {
            let (name, raw) = rest.split_once(':').ok_or_else(|| {
                CliError::Usage(format!("expected family:<name>:<params>, got '{s}'"))
            })?;
            SourceKind::Family(parse_family(name, raw)?)
        } else if let Some(name) = body.strip_prefix("bench:") {
            bench_graph(name)?;
            SourceKind::Bench(name.to_string())
        } else if s.is_empty() {
            return Err(CliError::Usage("empty graph source".into()));
        } else {
            SourceKind::File(PathBuf::from(s))
        };
        Ok(GraphSource {
            label: s.to_string(),
            kind,
            complement,
        })
    }
}

impl GraphSource {
    /// Resolves a relative file path against `base`.
    pub fn relative_to(mut self, base: &Path) -> Self {
        if let SourceKind::File(p) = &self.kind {
            if p.is_relative() {
                self.kind = SourceKind::File(base.join(p));
            }
        }
        self
    }

    pub fn load(&self) -> Result<Graph, CliError> {
        let g = match &self.kind {
            SourceKind::File(path) => {
                let file = File::open(path).map_err(|e| CliError::io(path, e))?;
                parse_dimacs(BufReader::new(file))
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
            }
            SourceKind::Family(f) => f.generate().map_err(|e| CliError::Usage(e.to_string()))?,
            SourceKind::Bench(name) => bench_graph(name)?,
        };
        Ok(if self.complement { g.complement() } else { g })
    }

    /// Scheme data for the collapsed models; only generator families qualify.
    pub fn scheme(&self) -> Result<SchemeSpec, CliError> {
        match (&self.kind, self.complement) {
            (SourceKind::Family(f), false) => {
                SchemeSpec::from_family(f).map_err(|e| CliError::Usage(e.to_string()))
            }
            _ => Err(CliError::Usage(format!(
                "collapsed models need a family:<name>:<params> source, got '{}'",
                self.label
            ))),
        }
    }
}

/// Named benchmark graphs: `petersen`, `queen<r>_<c>`, `myciel<k>`,
/// `<k>-Insertions_<i>`, `c-fat<n>-<c>`, `keller<d>`.
pub fn bench_graph(name: &str) -> Result<Graph, CliError> {
    let bad = || CliError::Usage(format!("unknown benchmark graph '{name}'"));
    let invalid = |e: mkcs::graph::GraphError| CliError::Usage(format!("{name}: {e}"));
    if name == "petersen" {
        return Ok(petersen());
    }
    if let Some(rest) = name.strip_prefix("queen") {
        let (r, c) = rest.split_once('_').ok_or_else(bad)?;
        let (r, c) = (r.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?);
        if r == 0 || c == 0 {
            return Err(bad());
        }
        return Ok(queen(r, c));
    }
    if let Some(rest) = name.strip_prefix("myciel") {
        return mycielski_family(rest.parse().map_err(|_| bad())?).map_err(invalid);
    }
    if let Some((k, i)) = name.split_once("-Insertions_") {
        return insertions(k.parse().map_err(|_| bad())?, i.parse().map_err(|_| bad())?)
            .map_err(invalid);
    }
    if let Some(rest) = name.strip_prefix("c-fat") {
        let (n, c) = rest.split_once('-').ok_or_else(bad)?;
        return cfat(n.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?).map_err(invalid);
    }
    if let Some(rest) = name.strip_prefix("keller") {
        return keller(rest.parse().map_err(|_| bad())?).map_err(invalid);
    }
    Err(bad())
}
