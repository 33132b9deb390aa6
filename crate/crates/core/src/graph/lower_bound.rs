//! The clique-chain-plus-expander family whose coalescence time separates from
//! its meeting time.
//!
//! Layout of vertex ids:
//!
//! ```text
//! [clique 0][clique 1]...[clique κ-1][expander side A][expander side B][hub]
//! ```
//!
//! Vertex 0 of every clique is its designated attachment vertex `z^i`, wired
//! to the hub. The hub is also wired to `⌈√(n/α')⌉` distinct expander
//! vertices chosen by the seed. All fractional sizes are rounded up; the
//! expander vertex count is additionally rounded up to an even number so the
//! two sides have equal size.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

/// Default lower clamp on `α`.
pub const DEFAULT_ALPHA_FLOOR: f64 = 4.0;

/// Smallest admitted `n`.
pub const MIN_N: usize = 64;

const MAX_ATTEMPTS: usize = 1000;

/// Component sizes of one lower-bound instance, derived from `(n, α)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Layout {
    pub n_param: usize,
    pub alpha: f64,
    pub alpha_eff: f64,
    pub cliques: usize,
    pub clique_size: usize,
    pub expander_vertices: usize,
    pub expander_degree: usize,
    pub hub_expander_links: usize,
}

fn ceil_sqrt(x: usize) -> usize {
    let mut r = (x as f64).sqrt() as usize;
    while r * r < x {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= x {
        r -= 1;
    }
    r
}

fn ceil_real(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

impl Layout {
    pub fn new(n: usize, alpha: f64, alpha_floor: f64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if n < MIN_N {
            return bad(format!("lower_bound needs n >= {MIN_N}, got {n}"));
        }
        if !(alpha.is_finite() && alpha >= 1.0) {
            return bad(format!("lower_bound needs alpha >= 1, got {alpha}"));
        }
        if !(alpha_floor.is_finite() && alpha_floor >= 1.0) {
            return bad(format!("lower_bound needs alpha_floor >= 1, got {alpha_floor}"));
        }
        let alpha_eff = alpha.max(alpha_floor);
        let root = ceil_sqrt(n);
        let mut expander_vertices = ceil_real(n as f64 / alpha_eff.sqrt());
        expander_vertices += expander_vertices % 2;
        let hub_expander_links = ceil_real((n as f64 / alpha_eff).sqrt());
        let layout = Self {
            n_param: n,
            alpha,
            alpha_eff,
            cliques: root,
            clique_size: root,
            expander_vertices,
            expander_degree: root,
            hub_expander_links,
        };
        if layout.expander_side() < layout.expander_degree {
            return bad(format!(
                "expander side {} is smaller than its degree {}; alpha {alpha} too large for n {n}",
                layout.expander_side(),
                layout.expander_degree
            ));
        }
        if layout.hub_expander_links < 3 {
            return bad(format!(
                "hub would attach to only {} expander vertices",
                layout.hub_expander_links
            ));
        }
        Ok(layout)
    }

    pub fn expander_side(&self) -> usize {
        self.expander_vertices / 2
    }

    pub fn expander_start(&self) -> usize {
        self.cliques * self.clique_size
    }

    pub fn hub(&self) -> usize {
        self.expander_start() + self.expander_vertices
    }

    pub fn total(&self) -> usize {
        self.hub() + 1
    }

    /// Degree of the hub: one edge per clique plus the expander links.
    pub fn hub_degree(&self) -> usize {
        self.cliques + self.hub_expander_links
    }

    pub fn clique_range(&self, i: usize) -> std::ops::Range<usize> {
        i * self.clique_size..(i + 1) * self.clique_size
    }

    /// Designated vertex `z^i` of clique `i`.
    pub fn attachment(&self, i: usize) -> usize {
        i * self.clique_size
    }

    pub fn expander_range(&self) -> std::ops::Range<usize> {
        self.expander_start()..self.hub()
    }
}

/// A lower-bound instance together with its layout and expander subgraph.
#[derive(Clone, Debug)]
pub struct LowerBoundGraph {
    pub graph: Graph,
    pub layout: Layout,
    /// The bipartite expander on its own, re-indexed to `0..expander_vertices`.
    pub expander: Graph,
    pub hub_links: Vec<usize>,
}

/// Builds the lower-bound instance for `(n, α)` with the default α floor.
pub fn lower_bound_graph(n: usize, alpha: f64, seed: u64) -> Result<LowerBoundGraph> {
    build(n, alpha, DEFAULT_ALPHA_FLOOR, seed)
}

pub(crate) fn build(n: usize, alpha: f64, alpha_floor: f64, seed: u64) -> Result<LowerBoundGraph> {
    let layout = Layout::new(n, alpha, alpha_floor)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let expander_edges = bipartite_regular(layout.expander_side(), layout.expander_degree, &mut rng)?;
    let expander = Graph::from_edges(layout.expander_vertices, expander_edges.iter().copied())?;

    let mut hub_links: Vec<usize> =
        index::sample(&mut rng, layout.expander_vertices, layout.hub_expander_links)
            .into_iter()
            .map(|i| layout.expander_start() + i)
            .collect();
    hub_links.sort_unstable();

    let mut edges = Vec::new();
    for i in 0..layout.cliques {
        let r = layout.clique_range(i);
        for u in r.clone() {
            for v in u + 1..r.end {
                edges.push((u, v));
            }
        }
        edges.push((layout.attachment(i), layout.hub()));
    }
    let base = layout.expander_start();
    edges.extend(expander_edges.iter().map(|&(a, b)| (base + a, base + b)));
    edges.extend(hub_links.iter().map(|&x| (x, layout.hub())));
    let graph = Graph::from_edges(layout.total(), edges)?;
    Ok(LowerBoundGraph { graph, layout, expander, hub_links })
}

/// Simple connected `degree`-regular bipartite graph on sides of size `side`
/// (ids `0..side` and `side..2*side`), built as a union of `degree` perfect
/// matchings. Each matching starts as a uniform permutation; entries that
/// would duplicate an existing edge are repaired by random transpositions.
fn bipartite_regular(side: usize, degree: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>> {
    let mut last_reason = String::new();
    'attempt: for _ in 0..MAX_ATTEMPTS {
        let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(degree); side];
        for _ in 0..degree {
            let Some(perm) = conflict_free_matching(&adj, side, rng) else {
                last_reason = "could not repair matching".into();
                continue 'attempt;
            };
            for (a, &b) in perm.iter().enumerate() {
                adj[a].push(b);
            }
        }
        let edges: Vec<(usize, usize)> = adj
            .iter()
            .enumerate()
            .flat_map(|(a, bs)| bs.iter().map(move |&b| (a, side + b)))
            .collect();
        let g = Graph::from_edges_unchecked(2 * side, edges.iter().copied())?;
        if !g.is_connected() {
            last_reason = "disconnected".into();
            continue;
        }
        return Ok(edges);
    }
    Err(Error::GenerationFailure { attempts: MAX_ATTEMPTS, reason: last_reason })
}

fn conflict_free_matching(adj: &[Vec<usize>], side: usize, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let mut perm: Vec<usize> = (0..side).collect();
    perm.shuffle(rng);
    let clash = |a: usize, b: usize| adj[a].contains(&b);
    for a in 0..side {
        if !clash(a, perm[a]) {
            continue;
        }
        let mut fixed = false;
        for _ in 0..64 * side {
            let j = rng.random_range(0..side);
            if j != a && !clash(a, perm[j]) && !clash(j, perm[a]) {
                perm.swap(a, j);
                fixed = true;
                break;
            }
        }
        if !fixed {
            return None;
        }
    }
    Some(perm)
}
