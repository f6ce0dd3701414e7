use std::path::Path;

use crate::error::{MmfError, Result};
use crate::graph::Graph;

fn directive(comment: &str) -> Option<&str> {
    let body = comment.trim_start_matches('#').trim();
    let rest = body.strip_prefix('n')?.trim_start();
    Some(rest.strip_prefix('=')?.trim())
}

/// Whitespace-separated `u v` pairs, 0-based, one per line. `#` starts a
/// comment; a `# n=N` comment fixes the vertex count, otherwise it is one
/// more than the largest index seen.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| MmfError::Parse { line, message };
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        if l.starts_with('#') {
            if let Some(v) = directive(l) {
                declared = Some(v.parse().map_err(|_| err(format!("invalid vertex count `{v}`")))?);
            }
            continue;
        }
        let data = l.split('#').next().unwrap_or("");
        let tok: Vec<&str> = data.split_whitespace().collect();
        if tok.len() != 2 {
            return Err(err(format!("expected two vertex indices, found `{l}`")));
        }
        let mut ends = [0usize; 2];
        for (slot, t) in ends.iter_mut().zip(&tok) {
            let v: i64 = t.parse().map_err(|_| err(format!("invalid vertex index `{t}`")))?;
            if v < 0 {
                return Err(err(format!("negative vertex index {v}")));
            }
            *slot = v as usize;
        }
        if ends[0] == ends[1] {
            return Err(err(format!("self-loop at vertex {}", ends[0])));
        }
        if let Some(n) = declared {
            if ends[0].max(ends[1]) >= n {
                return Err(err(format!("vertex {} exceeds declared n={n}", ends[0].max(ends[1]))));
            }
        }
        edges.push((ends[0], ends[1], line));
    }
    let seen = edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) => {
            if let Some(&(u, v, line)) = edges.iter().find(|&&(u, v, _)| u.max(v) >= n) {
                return Err(MmfError::Parse {
                    line,
                    message: format!("vertex {} exceeds declared n={n}", u.max(v)),
                });
            }
            n
        }
        None => seen,
    };
    Graph::new(n, edges.into_iter().map(|(u, v, _)| (u, v)))
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("# n={}\n", g.n());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
