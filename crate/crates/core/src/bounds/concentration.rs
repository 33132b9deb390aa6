//! Empirical checks of the occupation-time concentration inequalities.
//!
//! For `f: V -> [0,1]` and a lazy walk from any start, with
//! `T⁺ = max{t_hit, T}` and `f̄ = Σ f(v)π(v)`:
//! `E[Σ_{t<T} f(X_t)] <= 8·T⁺·f̄` and
//! `P(Σ_{t<T} f(X_t) >= λ(16·T⁺·f̄ + 1)) <= 2^{-λ}`.
//!
//! The collision mode replaces `f` by the time-dependent weight
//! `f_t(v) = 1_{v∈S}·p^t_{u,v}` for a walk started at `u ∈ S`, with
//! `Υ = 16γ·T⁺·max_{w∈S} π(w)` where `γ` is the degree ratio within `S`;
//! the bounds are `E <= Υ` and `P(Z >= λ(2Υ + 1)) <= 2^{-λ}`.

use rayon::prelude::*;
use serde::Serialize;

use crate::coalesce::pairwise_sum;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::markov::{lazy_step, stationary, t_hit, DistVector};
use crate::rng;

const LAMBDAS: [u32; 3] = [1, 2, 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConcentrationMode {
    Occupation,
    Collision,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailCheck {
    pub lambda: u32,
    pub threshold: f64,
    /// Largest tail frequency over start vertices.
    pub frequency: f64,
    pub stderr: f64,
    /// `2^{-λ} + 3·stderr`.
    pub allowed: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcentrationReport {
    pub mode: ConcentrationMode,
    pub t: u64,
    pub t_hit: f64,
    pub t_plus: f64,
    /// `f̄` in occupation mode, `Υ` in collision mode.
    pub scale: f64,
    pub mean_bound: f64,
    /// Largest empirical mean over start vertices.
    pub max_mean: f64,
    pub worst_start: usize,
    pub mean_passed: bool,
    pub tails: Vec<TailCheck>,
    pub starts: usize,
    pub trials_per_start: usize,
}

impl ConcentrationReport {
    pub fn passed(&self) -> bool {
        self.mean_passed && self.tails.iter().all(|t| t.passed)
    }
}

/// Indicator of `target_set`, with `trials` walks from every vertex.
pub fn check_concentration(g: &Graph, target_set: &[usize], t: u64, trials: usize, seed: u64) -> Result<ConcentrationReport> {
    let mut f = vec![0.0; g.n()];
    for &v in target_set {
        g.check_vertex(v)?;
        f[v] = 1.0;
    }
    check_concentration_weighted(g, &f, t, trials, seed)
}

/// Same as [`check_concentration`] for an arbitrary `f: V -> [0,1]`.
pub fn check_concentration_weighted(g: &Graph, f: &[f64], t: u64, trials: usize, seed: u64) -> Result<ConcentrationReport> {
    if f.len() != g.n() {
        return Err(Error::LengthMismatch { left: f.len(), right: g.n() });
    }
    if f.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
        return Err(Error::InvalidArgument("f must take values in [0, 1]".into()));
    }
    check_trials(trials)?;
    let th = t_hit(g)?;
    let t_plus = th.max(t as f64);
    let pi = stationary(g);
    let f_bar: f64 = f.iter().zip(pi.as_slice()).map(|(a, b)| a * b).sum();
    let starts: Vec<usize> = (0..g.n()).collect();
    let sums = sample_sums(g, &starts, t, trials, seed, |_, _, v| f[v]);
    Ok(summarize(
        ConcentrationMode::Occupation,
        &starts,
        &sums,
        t,
        th,
        t_plus,
        f_bar,
        8.0 * t_plus * f_bar,
        16.0 * t_plus * f_bar + 1.0,
    ))
}

/// Collision mode over walks started at every vertex of `set`.
pub fn check_collision_concentration(g: &Graph, set: &[usize], t: u64, trials: usize, seed: u64) -> Result<ConcentrationReport> {
    if set.is_empty() {
        return Err(Error::InvalidArgument("set is empty".into()));
    }
    check_trials(trials)?;
    let mut member = vec![false; g.n()];
    for &v in set {
        g.check_vertex(v)?;
        member[v] = true;
    }
    let th = t_hit(g)?;
    let t_plus = th.max(t as f64);
    let pi = stationary(g);
    let dmax = set.iter().map(|&v| g.degree(v)).max().unwrap_or(1) as f64;
    let dmin = set.iter().map(|&v| g.degree(v)).min().unwrap_or(1).max(1) as f64;
    let pi_max = set.iter().map(|&v| pi.get(v)).fold(0.0, f64::max);
    let upsilon = 16.0 * (dmax / dmin) * t_plus * pi_max;

    let mut starts: Vec<usize> = set.to_vec();
    starts.sort_unstable();
    starts.dedup();
    // Exact rows p^s_{u,·} for s < T, one table per start.
    let rows: Vec<Vec<Vec<f64>>> = starts
        .par_iter()
        .map(|&u| {
            let mut d = DistVector::point_mass(g.n(), u);
            let mut out = Vec::with_capacity(t as usize);
            for _ in 0..t {
                let step = lazy_step(g, &d).expect("length matches");
                out.push(std::mem::replace(&mut d, step).into_vec());
            }
            out
        })
        .collect();
    let sums = sample_sums(g, &starts, t, trials, seed, |si, s, v| {
        if member[v] {
            rows[si][s as usize][v]
        } else {
            0.0
        }
    });
    Ok(summarize(ConcentrationMode::Collision, &starts, &sums, t, th, t_plus, upsilon, upsilon, 2.0 * upsilon + 1.0))
}

fn check_trials(trials: usize) -> Result<()> {
    if trials < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 trials, got {trials}")));
    }
    Ok(())
}

/// `trials` sums `Σ_{s<T} weight(start index, s, X_s)` per start.
fn sample_sums<F>(g: &Graph, starts: &[usize], t: u64, trials: usize, seed: u64, weight: F) -> Vec<Vec<f64>>
where
    F: Fn(usize, u64, usize) -> f64 + Sync,
{
    starts
        .par_iter()
        .enumerate()
        .map(|(si, &u)| {
            (0..trials)
                .map(|i| {
                    let ts = rng::trial_seed(seed, (si * trials + i) as u64);
                    let mut x = u;
                    let mut acc = 0.0;
                    for s in 0..t {
                        acc += weight(si, s, x);
                        x = crate::coalesce::lazy_move(g, ts, s, 0, x);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn summarize(
    mode: ConcentrationMode,
    starts: &[usize],
    sums: &[Vec<f64>],
    t: u64,
    t_hit: f64,
    t_plus: f64,
    scale: f64,
    mean_bound: f64,
    unit: f64,
) -> ConcentrationReport {
    let trials = sums.first().map_or(0, Vec::len);
    let (mut max_mean, mut worst) = (f64::MIN, starts[0]);
    for (si, s) in sums.iter().enumerate() {
        let mean = pairwise_sum(s) / s.len() as f64;
        if mean > max_mean {
            max_mean = mean;
            worst = starts[si];
        }
    }
    let tails = LAMBDAS
        .iter()
        .map(|&lambda| {
            let threshold = lambda as f64 * unit;
            let freq = sums
                .iter()
                .map(|s| s.iter().filter(|&&x| x >= threshold).count() as f64 / s.len() as f64)
                .fold(0.0, f64::max);
            let stderr = (freq * (1.0 - freq) / trials as f64).sqrt();
            let allowed = 0.5f64.powi(lambda as i32) + 3.0 * stderr;
            TailCheck { lambda, threshold, frequency: freq, stderr, allowed, passed: freq <= allowed }
        })
        .collect();
    ConcentrationReport {
        mode,
        t,
        t_hit,
        t_plus,
        scale,
        mean_bound,
        max_mean,
        worst_start: worst,
        mean_passed: max_mean <= mean_bound,
        tails,
        starts: starts.len(),
        trials_per_start: trials,
    }
}
