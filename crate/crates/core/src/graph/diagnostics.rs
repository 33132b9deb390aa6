use serde::Serialize;

use super::Graph;

/// Structural summary of a graph. Every failed check is carried in the
/// report rather than returned as an error.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagnosticsReport {
    pub n: usize,
    pub m: usize,
    pub deg_max: usize,
    pub deg_min: usize,
    pub deg_avg: f64,
    pub gamma: f64,
    pub connected: bool,
    pub bipartite: bool,
    pub symmetric: bool,
    pub simple: bool,
    pub degree_sum_ok: bool,
}

impl DiagnosticsReport {
    /// True when every structural invariant holds.
    pub fn passed(&self) -> bool {
        self.connected && self.symmetric && self.simple && self.degree_sum_ok && (self.n == 1 || self.deg_min >= 1)
    }
}

pub fn validate(g: &Graph) -> DiagnosticsReport {
    let (offsets, nbrs) = g.raw_parts();
    let n = g.n();
    let mut symmetric = true;
    let mut simple = true;
    for u in 0..n {
        let row = &nbrs[offsets[u]..offsets[u + 1]];
        if row.windows(2).any(|w| w[0] >= w[1]) || row.contains(&(u as u32)) {
            simple = false;
        }
        if row.iter().any(|&v| !g.has_edge(v as usize, u)) {
            symmetric = false;
        }
    }
    let degree_sum: usize = (0..n).map(|u| g.degree(u)).sum();
    DiagnosticsReport {
        n,
        m: g.m(),
        deg_max: g.deg_max(),
        deg_min: g.deg_min(),
        deg_avg: g.deg_avg(),
        gamma: g.gamma(),
        connected: g.is_connected(),
        bipartite: g.is_bipartite(),
        symmetric,
        simple,
        degree_sum_ok: degree_sum == 2 * g.m() && nbrs.len() % 2 == 0,
    }
}
