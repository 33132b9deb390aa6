use serde::Serialize;

use super::dist::{stationary, RowEvolver};
use super::mixing::{mixing_time_with, MixingTime, DEFAULT_EPS};
use super::ExactConfig;
use crate::error::Result;
use crate::graph::Graph;

/// Collision and return statistics over the window `t ∈ [0, t_mix - 1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CollisionStats {
    /// `max_u Σ_t Σ_v (p^t_{u,v})²`
    pub c_max: f64,
    /// `min_u Σ_t Σ_v (p^t_{u,v})²`
    pub c_min: f64,
    /// `max_u Σ_t p^t_{u,u}`
    pub r_max: f64,
    /// `‖π‖₂²`
    pub pi_norm_sq: f64,
    /// Window length actually summed (at least 1).
    pub t_mix_used: u64,
    /// Whether `t_mix_used` is the exact pairwise mixing time or the upper
    /// end of a bracket.
    pub t_mix_exact: bool,
    /// Per-vertex return sums `Σ_t p^t_{v,v}`.
    pub returns: Vec<f64>,
}

pub fn collision_stats(g: &Graph) -> Result<CollisionStats> {
    collision_stats_with(g, &ExactConfig::default())
}

pub fn collision_stats_with(g: &Graph, cfg: &ExactConfig) -> Result<CollisionStats> {
    let mix = mixing_time_with(g, DEFAULT_EPS, cfg)?;
    Ok(collision_stats_for_window(g, mix))
}

/// Statistics for an already-computed mixing time.
pub fn collision_stats_for_window(g: &Graph, mix: MixingTime) -> CollisionStats {
    let n = g.n();
    let window = mix.value().max(1);
    let mut collisions = vec![0.0; n];
    let mut returns = vec![0.0; n];
    let mut ev = RowEvolver::new(g);
    while ev.t() < window {
        for u in 0..n {
            let row = ev.row(u);
            collisions[u] += row.iter().map(|p| p * p).sum::<f64>();
            returns[u] += row[u];
        }
        ev.step();
    }
    CollisionStats {
        c_max: collisions.iter().copied().fold(f64::MIN, f64::max),
        c_min: collisions.iter().copied().fold(f64::MAX, f64::min),
        r_max: returns.iter().copied().fold(f64::MIN, f64::max),
        pi_norm_sq: stationary(g).norm_sq(),
        t_mix_used: window,
        t_mix_exact: mix.is_exact(),
        returns,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use approx::assert_relative_eq;

    #[test]
    fn clique_sixteen_returns() {
        // t_mix = 2, so R = p^0_uu + p^1_uu = 1 + 1/2, and
        // C = 1 + (1/4 + 15/900).
        let g = generate(&FamilySpec::Clique { n: 16 }, 0).unwrap();
        let cs = collision_stats(&g).unwrap();
        assert_eq!(cs.t_mix_used, 2);
        assert_relative_eq!(cs.r_max, 1.5, max_relative = 1e-14);
        assert_relative_eq!(cs.c_max, 1.0 + 0.25 + 15.0 / 900.0, max_relative = 1e-14);
        assert_relative_eq!(cs.c_min, cs.c_max, max_relative = 1e-14);
        assert_relative_eq!(cs.pi_norm_sq, 1.0 / 16.0, max_relative = 1e-14);
    }

    #[test]
    fn basic_invariants() {
        for spec in [FamilySpec::Star { n: 12 }, FamilySpec::Barbell { n: 16 }, FamilySpec::Path { n: 9 }] {
            let cs = collision_stats(&generate(&spec, 0).unwrap()).unwrap();
            assert!(cs.c_min >= 1.0 && cs.c_min <= cs.c_max);
            assert!(cs.r_max >= 1.0);
        }
    }
}
