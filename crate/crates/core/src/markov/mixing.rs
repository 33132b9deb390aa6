use serde::Serialize;

use super::dist::{stationary, tv_slices, RowEvolver};
use super::ExactConfig;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default mixing threshold `1/e`.
pub const DEFAULT_EPS: f64 = std::f64::consts::E.recip();

/// Mixing time of a graph.
///
/// Up to the dense threshold this is the exact pairwise definition
/// `min{t : max_{u,v} TV(p_u^t, p_v^t) <= eps}`. Above it, the pairwise
/// distance is not evaluated; instead `d(t) = max_u TV(p_u^t, π)` is used and
/// the true value is bracketed by `d(t) <= d̄(t) <= 2 d(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MixingTime {
    Exact { t: u64 },
    /// `lower` is the first `t` with `d(t) <= eps`, `upper` the first with
    /// `d(t) <= eps / 2`.
    Bracket { lower: u64, upper: u64 },
}

impl MixingTime {
    /// The exact value, or the upper end of the bracket.
    pub fn value(&self) -> u64 {
        match *self {
            MixingTime::Exact { t } => t,
            MixingTime::Bracket { upper, .. } => upper,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, MixingTime::Exact { .. })
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("eps must lie in (0, 1), got {eps}")))
    }
}

/// `d(t) = max_u TV(p_u^t, π)`.
fn dist_to_stationary(ev: &RowEvolver<'_>, pi: &[f64]) -> f64 {
    ev.rows().map(|r| tv_slices(r, pi)).fold(0.0, f64::max)
}

/// Whether `max_{u,v} TV(p_u^t, p_v^t) <= eps`, stopping at the first pair
/// that exceeds it.
fn pairwise_within(ev: &RowEvolver<'_>, n: usize, eps: f64) -> bool {
    use rayon::prelude::*;
    (0..n).into_par_iter().all(|u| (u + 1..n).all(|v| tv_slices(ev.row(u), ev.row(v)) <= eps))
}

/// `d̄(t) = max_{u,v} TV(p_u^t, p_v^t)`.
pub(crate) fn pairwise_distance(rows: &[&[f64]]) -> f64 {
    let mut best = 0.0f64;
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            best = best.max(tv_slices(a, b));
        }
    }
    best
}

pub fn mixing_time(g: &Graph, eps: f64) -> Result<MixingTime> {
    mixing_time_with(g, eps, &ExactConfig::default())
}

pub fn mixing_time_with(g: &Graph, eps: f64, cfg: &ExactConfig) -> Result<MixingTime> {
    check_eps(eps)?;
    let n = g.n();
    if n == 1 {
        return Ok(MixingTime::Exact { t: 0 });
    }
    let pi = stationary(g).into_vec();
    let mut ev = RowEvolver::new(g);
    let exact = n <= cfg.dense_mixing_threshold;
    let mut lower = None;
    loop {
        let d = dist_to_stationary(&ev, &pi);
        if exact {
            // d <= d̄ <= 2d, so the pairwise scan is only needed in between.
            if 2.0 * d <= eps || (d <= eps && pairwise_within(&ev, n, eps)) {
                return Ok(MixingTime::Exact { t: ev.t() });
            }
        } else {
            if lower.is_none() && d <= eps {
                lower = Some(ev.t());
            }
            if d <= eps / 2.0 {
                return Ok(MixingTime::Bracket { lower: lower.unwrap_or(ev.t()), upper: ev.t() });
            }
        }
        if ev.t() >= cfg.t_cap {
            return Err(Error::BudgetExceeded { cap: cfg.t_cap });
        }
        ev.step();
    }
}

/// Smallest `t` with `p^t_{u,v} >= (1 - eps) π(v)` for every pair.
pub fn separation_time(g: &Graph, eps: f64) -> Result<u64> {
    separation_time_with(g, eps, &ExactConfig::default())
}

pub fn separation_time_with(g: &Graph, eps: f64, cfg: &ExactConfig) -> Result<u64> {
    check_eps(eps)?;
    if g.n() == 1 {
        return Ok(0);
    }
    let pi = stationary(g).into_vec();
    let mut ev = RowEvolver::new(g);
    loop {
        if separation(&ev, &pi) <= eps {
            return Ok(ev.t());
        }
        if ev.t() >= cfg.t_cap {
            return Err(Error::BudgetExceeded { cap: cfg.t_cap });
        }
        ev.step();
    }
}

/// `s(t) = max_{u,v} (1 - p^t_{u,v} / π(v))`.
fn separation(ev: &RowEvolver<'_>, pi: &[f64]) -> f64 {
    ev.rows()
        .flat_map(|r| r.iter().zip(pi).map(|(p, q)| 1.0 - p / q))
        .fold(0.0, f64::max)
}

/// The three distance notions at one time step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DistanceSample {
    pub t: u64,
    /// `max_u TV(p_u^t, π)`
    pub d: f64,
    /// `max_{u,v} TV(p_u^t, p_v^t)`
    pub d_bar: f64,
    /// separation distance
    pub s: f64,
}

/// Evaluates `d`, `d̄` and `s` for `t = 0..=t_max`. Intended for small graphs;
/// cost is `O(t_max · n³)`.
pub fn distance_profile(g: &Graph, t_max: u64) -> Vec<DistanceSample> {
    let pi = stationary(g).into_vec();
    let mut ev = RowEvolver::new(g);
    let mut out = Vec::with_capacity(t_max as usize + 1);
    loop {
        let rows: Vec<&[f64]> = ev.rows().collect();
        out.push(DistanceSample {
            t: ev.t(),
            d: dist_to_stationary(&ev, &pi),
            d_bar: pairwise_distance(&rows),
            s: separation(&ev, &pi),
        });
        if ev.t() >= t_max {
            return out;
        }
        ev.step();
    }
}
