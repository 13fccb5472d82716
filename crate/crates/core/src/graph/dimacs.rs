use std::fmt::Write as _;
use std::io::BufRead;

use super::{Graph, GraphBuilder, GraphError};

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_index(tok: Option<&str>, line: usize) -> Result<usize, GraphError> {
    let tok = tok.ok_or_else(|| parse_err(line, "missing token"))?;
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("malformed token '{tok}'")))
}

/// Parses a DIMACS `.col` stream. Indices in `e` lines are 1-based; repeated
/// edges collapse; the declared edge count is not enforced.
pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    let mut builder: Option<GraphBuilder> = None;
    for (no, line) in reader.lines().enumerate() {
        let no = no + 1;
        let line = line.map_err(|e| parse_err(no, format!("read failure: {e}")))?;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some(t) if t.starts_with('c') => {}
            Some("p") => {
                if builder.is_some() {
                    return Err(parse_err(no, "duplicate problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("edges") | Some("col") => {}
                    other => {
                        return Err(parse_err(
                            no,
                            format!("unsupported problem type '{}'", other.unwrap_or("")),
                        ))
                    }
                }
                let n = parse_index(toks.next(), no)?;
                let _declared_m = parse_index(toks.next(), no)?;
                if n == 0 {
                    return Err(parse_err(no, "graph must have at least one vertex"));
                }
                builder = Some(GraphBuilder::new(n));
            }
            Some("e") => {
                let b = builder
                    .as_mut()
                    .ok_or_else(|| parse_err(no, "edge line before problem line"))?;
                let i = parse_index(toks.next(), no)?;
                let j = parse_index(toks.next(), no)?;
                if i == 0 || j == 0 || i > b.n() || j > b.n() {
                    return Err(parse_err(no, "vertex index out of range"));
                }
                if i == j {
                    return Err(parse_err(no, format!("self-loop on vertex {i}")));
                }
                b.push_unchecked(i - 1, j - 1);
            }
            Some(t) => return Err(parse_err(no, format!("malformed token '{t}'"))),
        }
    }
    builder
        .map(GraphBuilder::build)
        .ok_or_else(|| parse_err(0, "missing problem line"))
}

/// Serializes to DIMACS with 1-based indices, one `e` line per edge.
pub fn write_dimacs(g: &Graph) -> String {
    let mut s = String::with_capacity(16 + 12 * g.m());
    let _ = write!(s, "p edge {} {}", g.n(), g.m());
    for &(i, j) in g.edges() {
        let _ = write!(s, "\ne {} {}", i + 1, j + 1);
    }
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::petersen;

    fn parse(s: &str) -> Result<Graph, GraphError> {
        parse_dimacs(s.as_bytes())
    }

    #[test]
    fn parses_path() {
        let g = parse("p edge 3 2\ne 1 2\ne 2 3").unwrap();
        assert_eq!(g, Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap());
    }

    #[test]
    fn duplicates_collapse() {
        let g = parse("c x\np edge 2 1\ne 1 2\ne 1 2\ne 2 1").unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn out_of_range_names_line() {
        let err = parse("p edge 2 1\ne 1 3").unwrap_err();
        assert_eq!(err.to_string(), "vertex index out of range, line 2");
    }

    #[test]
    fn other_errors() {
        assert!(matches!(
            parse("e 1 2"),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert!(matches!(parse("c only"), Err(GraphError::Parse { .. })));
        assert!(matches!(
            parse("p edge 3 1\ne 2 2"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("p edge 3 1\ne 1 x"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("p edge 3 1\np edge 3 1"),
            Err(GraphError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn writes_canonical_text() {
        let g = Graph::from_edges(2, [(1, 0)]).unwrap();
        assert_eq!(write_dimacs(&g), "p edge 2 1\ne 1 2\n");
        assert_eq!(write_dimacs(&Graph::edgeless(1)), "p edge 1 0\n");
    }

    #[test]
    fn round_trip_petersen() {
        let g = petersen();
        assert_eq!(parse(&write_dimacs(&g)).unwrap(), g);
    }
}
