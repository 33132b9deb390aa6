use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::process::{simulate_coalescence, simulate_immortal, simulate_meeting, ImmortalStop};
use super::sample::{Estimate, SimSample};
use super::voter::simulate_voter;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::markov::stationary;
use crate::rng;

/// What an ensemble simulates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimKind {
    /// Two walks from a fixed pair.
    Meeting { u: usize, v: usize },
    /// Two walks from independent stationary samples.
    MeetingStationary,
    /// Coalescing walks; `start: None` means one walk on every vertex.
    Coalescence { start: Option<Vec<usize>> },
    Voter { lazy: bool },
    Immortal {
        start: Option<Vec<usize>>,
        immortal: Vec<usize>,
        target_k: usize,
        stop: ImmortalStop,
    },
}

/// Samples a vertex from `cdf` (cumulative stationary weights).
fn sample_vertex(cdf: &[f64], w: u64) -> usize {
    let x = rng::unit_f64(w) * cdf[cdf.len() - 1];
    cdf.partition_point(|&c| c <= x).min(cdf.len() - 1)
}

/// Runs one trial with the given trial seed.
pub fn run_trial(kind: &SimKind, g: &Graph, seed: u64, cap: u64) -> Result<SimSample> {
    let all = || (0..g.n()).collect::<Vec<_>>();
    match kind {
        SimKind::Meeting { u, v } => simulate_meeting(g, *u, *v, seed, cap),
        SimKind::MeetingStationary => {
            let pi = stationary(g);
            let mut acc = 0.0;
            let cdf: Vec<f64> = pi.as_slice().iter().map(|p| { acc += p; acc }).collect();
            let u = sample_vertex(&cdf, rng::word(seed, u64::MAX, 0));
            let v = sample_vertex(&cdf, rng::word(seed, u64::MAX, 1));
            simulate_meeting(g, u, v, seed, cap)
        }
        SimKind::Coalescence { start } => {
            let s0 = start.clone().unwrap_or_else(all);
            simulate_coalescence(g, &s0, seed, cap, false)
        }
        SimKind::Voter { lazy } => simulate_voter(g, seed, cap, *lazy),
        SimKind::Immortal { start, immortal, target_k, stop } => {
            let s0 = start.clone().unwrap_or_else(all);
            simulate_immortal(g, &s0, immortal, *target_k, *stop, seed, cap)
        }
    }
}

/// Runs `trials` independent trials with per-trial seeds derived from
/// `master_seed` and the trial index. The result does not depend on the
/// number of worker threads.
pub fn run_trials(kind: &SimKind, g: &Graph, trials: usize, master_seed: u64, cap: u64) -> Result<Vec<SimSample>> {
    (0..trials as u64)
        .into_par_iter()
        .map(|i| run_trial(kind, g, rng::trial_seed(master_seed, i), cap))
        .collect()
}

pub fn estimate(kind: &SimKind, g: &Graph, trials: usize, master_seed: u64, cap: u64) -> Result<Estimate> {
    if trials < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 trials, got {trials}")));
    }
    let samples = run_trials(kind, g, trials, master_seed, cap)?;
    let est = Estimate::from_samples(&samples, cap)?;
    if est.censored_warning {
        log::warn!("{} of {} trials censored at cap {cap}", est.censored_count, est.trials);
    }
    Ok(est)
}
