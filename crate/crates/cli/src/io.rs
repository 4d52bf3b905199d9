//! Edge-list text format.
//!
//! First line `n m`, then `m` lines `u v` with 0-based ids and `u < v`,
//! whitespace-separated. The parser reports the offending line number for
//! every rejection.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use ocol_core::graph::{Graph, Vertex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Parses the edge-list format from a string.
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text.lines().enumerate();

    let (header_idx, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or(EdgeListError::Parse {
            line: 1,
            message: "missing header line \"n m\"".into(),
        })?;
    let mut parts = header.split_whitespace();
    let n: usize = parse_token(parts.next(), header_idx + 1, "vertex count")?;
    let m: usize = parse_token(parts.next(), header_idx + 1, "edge count")?;
    if parts.next().is_some() {
        return Err(EdgeListError::Format {
            line: header_idx + 1,
            message: "header must be exactly \"n m\"".into(),
        });
    }

    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let u: Vertex = parse_token(parts.next(), line_no, "edge endpoint")?;
        let v: Vertex = parse_token(parts.next(), line_no, "edge endpoint")?;
        if parts.next().is_some() {
            return Err(EdgeListError::Format {
                line: line_no,
                message: "edge line must be exactly \"u v\"".into(),
            });
        }
        if u >= v {
            return Err(EdgeListError::Format {
                line: line_no,
                message: format!("endpoints must satisfy u < v, got {u} {v}"),
            });
        }
        if v as usize >= n {
            return Err(EdgeListError::Format {
                line: line_no,
                message: format!("endpoint {v} outside [0, {n})"),
            });
        }
        if !seen.insert((u, v)) {
            return Err(EdgeListError::Format {
                line: line_no,
                message: format!("duplicate edge {u} {v}"),
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(EdgeListError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, edges).expect("parser enforced all graph invariants"))
}

fn parse_token<T: std::str::FromStr>(
    token: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, EdgeListError> {
    let token = token.ok_or_else(|| EdgeListError::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| EdgeListError::Parse {
        line,
        message: format!("invalid {what}: {token:?}"),
    })
}

/// Renders a graph in the edge-list format (edges sorted, `u < v`).
pub fn format_edge_list(graph: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", graph.vertex_count(), graph.edge_count());
    for &(u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_edge_list(path: &Path) -> Result<Graph, EdgeListError> {
    parse_edge_list(&fs::read_to_string(path)?)
}

pub fn write_edge_list(path: &Path, graph: &Graph) -> Result<(), EdgeListError> {
    Ok(fs::write(path, format_edge_list(graph))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let text = format_edge_list(&g);
        assert_eq!(text, "4 3\n0 1\n1 2\n2 3\n");
        let parsed = parse_edge_list(&text).unwrap();
        assert_eq!(parsed, g);
    }

    #[test]
    fn single_edge_instance_text() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(format_edge_list(&g), "2 1\n0 1\n");
    }

    #[test]
    fn rejects_with_line_numbers() {
        let err = parse_edge_list("3 2\n0 1\n1 1\n").unwrap_err();
        assert!(matches!(err, EdgeListError::Format { line: 3, .. }), "{err}");
        let err = parse_edge_list("3 2\n0 1\n0 9\n").unwrap_err();
        assert!(matches!(err, EdgeListError::Format { line: 3, .. }));
        let err = parse_edge_list("3 2\n0 1\nx y\n").unwrap_err();
        assert!(matches!(err, EdgeListError::Parse { line: 3, .. }));
        let err = parse_edge_list("3 2\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, EdgeListError::Format { line: 3, .. }));
        let err = parse_edge_list("2 2\n0 1\n").unwrap_err();
        assert!(matches!(
            err,
            EdgeListError::EdgeCount {
                expected: 2,
                found: 1
            }
        ));
        let err = parse_edge_list("3 2\n0 1\n0 1\n").unwrap_err();
        assert!(matches!(err, EdgeListError::Format { line: 3, .. }));
    }
}
