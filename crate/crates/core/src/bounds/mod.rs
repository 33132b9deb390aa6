//! Bound expressions, explicit-constant inequality checks and empirical
//! concentration checks.
//!
//! Logarithms are natural unless stated otherwise.

mod concentration;
mod report;

pub use concentration::{
    check_collision_concentration, check_concentration, check_concentration_weighted, ConcentrationMode,
    ConcentrationReport, TailCheck,
};
pub use report::{measure, verify_relations, BoundEntry, BoundReport, MeasuredQuantities, Relation};

use std::f64::consts::E;

use serde::Serialize;

use crate::markov::CollisionStats;

/// Relative slack used when comparing floating-point quantities that can be
/// equal in exact arithmetic.
pub const REL_TOL: f64 = 1e-9;

pub(crate) fn approx_le(a: f64, b: f64) -> bool {
    a <= b + REL_TOL * a.abs().max(b.abs()).max(1e-300)
}

/// `t_meet·(1 + √(t_mix/t_meet)·ln n)`, the coalescence trade-off with
/// implicit constant 1.
pub fn bound_coal_mixtradeoff(t_meet: f64, t_mix: f64, n: f64) -> f64 {
    t_meet * (1.0 + (t_mix / t_meet).sqrt() * n.ln())
}

/// `(C_min / (64‖π‖²), 5e²·C_max / ‖π‖²)`: a lower bound on the stationary
/// meeting time and an upper bound on every pairwise meeting time.
pub fn bound_meet_interval(cs: &CollisionStats) -> (f64, f64) {
    (cs.c_min / (64.0 * cs.pi_norm_sq), 5.0 * E * E * cs.c_max / cs.pi_norm_sq)
}

pub fn bound_meet_hit(t_hit: f64) -> f64 {
    4.0 * t_hit
}

/// `γ·n / √(1 − λ₂)`.
pub fn bound_hit_spectral(n: f64, gamma: f64, lambda2: f64) -> f64 {
    gamma * n / (1.0 - lambda2).sqrt()
}

/// `t_meet·ln k`.
pub fn bound_coal_beer(t_meet: f64, k: f64) -> f64 {
    t_meet * k.ln()
}

/// Two-sided check
/// `max{t_mix/e, t_meet^π} <= t_meet <= 2/(1−1/e)²·(4·t_mix + 2·t_meet^π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sandwich {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

impl Sandwich {
    pub fn passed(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

pub fn sandwich_avgmeet(t_mix: f64, t_meet_pi: f64, t_meet: f64) -> Sandwich {
    let lower = (t_mix / E).max(t_meet_pi);
    let c = 2.0 / (1.0 - E.recip()).powi(2);
    let upper = c * (4.0 * t_mix + 2.0 * t_meet_pi);
    Sandwich { lower, value: t_meet, upper, lower_ok: approx_le(lower, t_meet), upper_ok: approx_le(t_meet, upper) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec, Graph};
    use crate::markov::{collision_stats, meeting_exact, mixing_time, t_hit};
    use approx::assert_relative_eq;

    #[test]
    fn expression_arithmetic() {
        assert_relative_eq!(bound_coal_mixtradeoff(100.0, 100.0, E), 200.0, max_relative = 1e-15);
        assert_relative_eq!(bound_coal_mixtradeoff(50.0, 1e-300, 1000.0), 50.0, max_relative = 1e-12);
        assert_eq!(bound_meet_hit(14.0), 56.0);
        assert_eq!(bound_hit_spectral(8.0, 1.0, 0.0), 8.0);
        assert_relative_eq!(bound_coal_beer(10.0, E), 10.0, max_relative = 1e-15);
        assert_relative_eq!(bound_coal_beer(7.0, 2.0), 7.0 * 2f64.ln(), max_relative = 1e-15);
    }

    #[test]
    fn meet_interval_arithmetic() {
        let cs = CollisionStats {
            c_max: 1.0,
            c_min: 1.0,
            r_max: 1.0,
            pi_norm_sq: 1.0 / 128.0,
            t_mix_used: 1,
            t_mix_exact: true,
            returns: vec![],
        };
        let (lo, hi) = bound_meet_interval(&cs);
        assert_relative_eq!(lo, 2.0, max_relative = 1e-15);
        assert_relative_eq!(hi, 640.0 * E * E, max_relative = 1e-15);
    }

    #[test]
    fn meet_interval_holds_on_cycle_and_star() {
        for spec in [FamilySpec::Cycle { n: 16 }, FamilySpec::Star { n: 64 }] {
            let g = generate(&spec, 0).unwrap();
            let m = meeting_exact(&g).unwrap();
            let (lo, hi) = bound_meet_interval(&collision_stats(&g).unwrap());
            assert!(lo <= m.t_meet_pi && m.t_meet <= hi && hi.is_finite(), "{spec:?}: {lo} {hi} {m:?}");
        }
    }

    #[test]
    fn k8_meet_below_four_hit() {
        let g = generate(&FamilySpec::Clique { n: 8 }, 0).unwrap();
        assert!(meeting_exact(&g).unwrap().t_meet <= bound_meet_hit(t_hit(&g).unwrap()));
    }

    #[test]
    fn sandwich_k2_and_falsification() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let m = meeting_exact(&g).unwrap();
        let mix = mixing_time(&g, crate::markov::DEFAULT_EPS).unwrap().value() as f64;
        assert!(sandwich_avgmeet(mix, m.t_meet_pi, m.t_meet).passed());
        let bad = sandwich_avgmeet(3.0, 0.0, 3e6);
        assert!(bad.lower_ok && !bad.upper_ok);
    }
}
