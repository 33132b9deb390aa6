use super::Graph;
use crate::error::{Error, Result};

/// Parses whitespace-separated `u v` pairs with 0-based ids. Blank lines and
/// lines starting with `#` are skipped. The vertex count is one more than the
/// largest id seen.
pub fn load_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_id = None;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut next = || -> Result<usize> {
            let tok = fields.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected two vertex ids".into(),
            })?;
            tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("'{tok}' is not a non-negative integer"),
            })
        };
        let (u, v) = (next()?, next()?);
        if let Some(extra) = fields.next() {
            return Err(Error::Parse { line: line_no, message: format!("unexpected token '{extra}'") });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        max_id = max_id.max(Some(u.max(v)));
        edges.push((u, v));
    }
    let n = max_id.map_or(0, |m| m + 1);
    if n == 0 {
        return Err(Error::Parse { line: 0, message: "no edges".into() });
    }
    Graph::from_edges(n, edges)
}

/// Renders the graph as one `u v` line per edge with `u < v`.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(g.m() * 8);
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
