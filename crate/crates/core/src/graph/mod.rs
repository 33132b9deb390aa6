//! Undirected simple graphs in compressed adjacency form, plus generators for
//! every topology the toolkit measures.

mod diagnostics;
mod family;
mod generators;
mod io;
mod lower_bound;

pub use diagnostics::{validate, DiagnosticsReport};
pub use family::{FamilyKind, FamilySpec};
pub use generators::generate;
pub use io::{load_edge_list, to_edge_list};
pub use lower_bound::{lower_bound_graph, LowerBoundGraph, DEFAULT_ALPHA_FLOOR};

use crate::error::{Error, Result};

/// Immutable, connected, simple undirected graph.
///
/// Vertices are `0..n`. Neighbors of `u` live in
/// `neighbors[offsets[u]..offsets[u + 1]]`, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl Graph {
    /// Builds a graph from an undirected edge list. Each edge may be listed in
    /// either or both orientations; duplicates are merged. Self-loops and
    /// disconnected inputs are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let g = Self::from_edges_unchecked(n, edges)?;
        let reached = g.reachable_from(0);
        if reached != n {
            return Err(Error::DisconnectedGraph { reached, n });
        }
        Ok(g)
    }

    /// Like [`Graph::from_edges`] but skips the connectivity check. Used by
    /// generators that test connectivity themselves and retry.
    pub(crate) fn from_edges_unchecked<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::InvalidSpec("graph must have at least one vertex".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidSpec(format!("{n} vertices exceeds u32 id space")));
        }
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            pairs.push((u as u32, v as u32));
            pairs.push((v as u32, u as u32));
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let neighbors = pairs.into_iter().map(|(_, v)| v).collect();
        Ok(Self { offsets, neighbors })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.neighbors[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    pub fn deg_max(&self) -> usize {
        (0..self.n()).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn deg_min(&self) -> usize {
        (0..self.n()).map(|u| self.degree(u)).min().unwrap_or(0)
    }

    /// Average degree `2m / n`.
    pub fn deg_avg(&self) -> f64 {
        self.neighbors.len() as f64 / self.n() as f64
    }

    /// Degree ratio `Δ/δ`.
    pub fn gamma(&self) -> f64 {
        let dmin = self.deg_min();
        if dmin == 0 {
            return 1.0;
        }
        self.deg_max() as f64 / dmin as f64
    }

    pub fn is_regular(&self) -> bool {
        self.deg_max() == self.deg_min()
    }

    /// Edges with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub(crate) fn raw_parts(&self) -> (&[usize], &[u32]) {
        (&self.offsets, &self.neighbors)
    }

    /// Number of vertices reachable from `start` by BFS.
    pub fn reachable_from(&self, start: usize) -> usize {
        self.bfs_distances(start).iter().filter(|d| d.is_some()).count()
    }

    pub fn bfs_distances(&self, start: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = std::collections::VecDeque::new();
        dist[start] = Some(0);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &v in self.neighbors(u) {
                let v = v as usize;
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.reachable_from(0) == self.n()
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side: Vec<Option<bool>> = vec![None; self.n()];
        for s in 0..self.n() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap_or(false);
                for &v in self.neighbors(u) {
                    match side[v as usize] {
                        None => {
                            side[v as usize] = Some(!su);
                            stack.push(v as usize);
                        }
                        Some(sv) if sv == su => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }
}
