use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FamilySpec, Graph};
use crate::error::{Error, Result};

/// Maximum number of pairing attempts for the configuration model.
pub const RANDOM_REGULAR_RETRIES: usize = 1000;

/// Generates the graph described by `spec`. The seed is only consumed by
/// random families; every other family ignores it.
pub fn generate(spec: &FamilySpec, seed: u64) -> Result<Graph> {
    spec.check()?;
    match *spec {
        FamilySpec::Path { n } => Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))),
        FamilySpec::Cycle { n } => Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))),
        FamilySpec::Clique { n } => {
            Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        FamilySpec::Star { n } => Graph::from_edges(n, (1..n).map(|leaf| (0, leaf))),
        FamilySpec::BinaryTree { levels } => {
            let n = (1usize << levels) - 1;
            Graph::from_edges(n, (1..n).map(|v| ((v - 1) / 2, v)))
        }
        FamilySpec::Hypercube { dim } => {
            let n = 1usize << dim;
            Graph::from_edges(
                n,
                (0..n).flat_map(|u| (0..dim).map(move |b| (u, u ^ (1 << b)))),
            )
        }
        FamilySpec::Torus { dim, side } => lattice(dim, side, true),
        FamilySpec::Grid { dim, side } => lattice(dim, side, false),
        FamilySpec::Barbell { n } => barbell(n),
        FamilySpec::RandomRegular { n, degree } => random_regular(n, degree, seed),
        FamilySpec::LowerBound { n, alpha, alpha_floor } => {
            super::lower_bound::build(n, alpha, alpha_floor, seed).map(|lb| lb.graph)
        }
    }
}

fn lattice(dim: u32, side: usize, wrap: bool) -> Result<Graph> {
    let n = side.pow(dim);
    let mut edges = Vec::with_capacity(n * dim as usize);
    for u in 0..n {
        let mut stride = 1;
        for _ in 0..dim {
            let coord = (u / stride) % side;
            if coord + 1 < side {
                edges.push((u, u + stride));
            } else if wrap {
                edges.push((u, u - coord * stride));
            }
            stride *= side;
        }
    }
    Graph::from_edges(n, edges)
}

/// Cliques occupy `0..k` and `n-k..n`; the path occupies `k..n-k`. Clique
/// vertex `k-1` attaches to path vertex `k`, and clique vertex `n-k` attaches
/// to path vertex `n-k-1`.
fn barbell(n: usize) -> Result<Graph> {
    let k = n / 4;
    let mut edges = Vec::new();
    for base in [0, n - k] {
        for u in 0..k {
            for v in u + 1..k {
                edges.push((base + u, base + v));
            }
        }
    }
    for p in k - 1..n - k {
        edges.push((p, p + 1));
    }
    Graph::from_edges(n, edges)
}

/// Pairing model: shuffle `n * degree` half-edge stubs, pair consecutive
/// stubs, and reject the whole pairing on any loop or multi-edge.
fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|u| std::iter::repeat_n(u, degree)).collect();
    let mut last_reason = String::new();
    for _ in 0..RANDOM_REGULAR_RETRIES {
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = stubs
            .chunks_exact(2)
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        if edges.iter().any(|&(u, v)| u == v) {
            last_reason = "self-loop".into();
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            last_reason = "multi-edge".into();
            continue;
        }
        let g = Graph::from_edges_unchecked(n, edges)?;
        if !g.is_connected() {
            last_reason = "disconnected".into();
            continue;
        }
        return Ok(g);
    }
    Err(Error::GenerationFailure { attempts: RANDOM_REGULAR_RETRIES, reason: last_reason })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(g: &Graph) -> Vec<usize> {
        (0..g.n()).map(|u| g.degree(u)).collect()
    }

    #[test]
    fn cycle_four() {
        let g = generate(&FamilySpec::Cycle { n: 4 }, 0).unwrap();
        assert_eq!((g.n(), g.m()), (4, 4));
        assert!(degrees(&g).iter().all(|&d| d == 2));
    }

    #[test]
    fn hypercube_three() {
        let g = generate(&FamilySpec::Hypercube { dim: 3 }, 0).unwrap();
        assert_eq!((g.n(), g.m()), (8, 12));
        assert!(g.is_regular() && g.deg_max() == 3);
    }

    #[test]
    fn barbell_sixteen() {
        let g = generate(&FamilySpec::Barbell { n: 16 }, 0).unwrap();
        assert_eq!(g.n(), 16);
        // two K4 (6 edges each), 8 path vertices (7 edges) and two attachments
        assert_eq!(g.m(), 6 + 6 + 7 + 2);
        for base in [0, 12] {
            for u in base..base + 4 {
                for v in u + 1..base + 4 {
                    assert!(g.has_edge(u, v));
                }
            }
        }
        for p in 4..12 {
            assert_eq!(g.degree(p), 2);
        }
        assert!(g.has_edge(3, 4) && g.has_edge(11, 12));
        assert_eq!((g.deg_max(), g.deg_min()), (4, 2));
    }

    #[test]
    fn binary_tree_levels() {
        let g = generate(&FamilySpec::BinaryTree { levels: 4 }, 0).unwrap();
        assert_eq!((g.n(), g.m()), (15, 14));
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.deg_max(), 3);
        assert_eq!((7..15).filter(|&v| g.degree(v) == 1).count(), 8);
    }

    #[test]
    fn torus_and_grid() {
        let t = generate(&FamilySpec::Torus { dim: 2, side: 4 }, 0).unwrap();
        assert_eq!((t.n(), t.m()), (16, 32));
        assert!(t.is_regular() && t.deg_max() == 4);
        let t3 = generate(&FamilySpec::Torus { dim: 3, side: 3 }, 0).unwrap();
        assert!(t3.is_regular() && t3.deg_max() == 6);
        let g = generate(&FamilySpec::Grid { dim: 2, side: 3 }, 0).unwrap();
        assert_eq!((g.n(), g.m(), g.deg_min(), g.deg_max()), (9, 12, 2, 4));
    }

    #[test]
    fn star_and_clique() {
        let s = generate(&FamilySpec::Star { n: 5 }, 0).unwrap();
        assert_eq!((s.deg_max(), s.deg_min(), s.m()), (4, 1, 4));
        let k = generate(&FamilySpec::Clique { n: 6 }, 0).unwrap();
        assert_eq!(k.m(), 15);
    }

    #[test]
    fn random_regular_is_deterministic_and_regular() {
        let spec = FamilySpec::RandomRegular { n: 50, degree: 4 };
        let a = generate(&spec, 11).unwrap();
        let b = generate(&spec, 11).unwrap();
        let c = generate(&spec, 12).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.is_regular() && a.deg_max() == 4 && a.is_connected());
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&FamilySpec::RandomRegular { n: 7, degree: 3 }, 0).is_err());
        assert!(generate(&FamilySpec::Barbell { n: 10 }, 0).is_err());
        assert!(generate(&FamilySpec::Cycle { n: 2 }, 0).is_err());
    }
}
