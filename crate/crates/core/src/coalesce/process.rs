use serde::{Deserialize, Serialize};

use super::sample::{Checkpoints, SimSample};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

/// Next position of walk `id` sitting on `v` at step `t`.
#[inline]
pub(crate) fn lazy_move(g: &Graph, seed: u64, t: u64, id: u64, v: usize) -> usize {
    match rng::lazy_choice(rng::word(seed, t, id), g.degree(v)) {
        None => v,
        Some(i) => g.neighbors(v)[i] as usize,
    }
}

fn check_cap(cap: u64) -> Result<()> {
    if cap == 0 {
        Err(Error::InvalidArgument("cap must be at least 1".into()))
    } else {
        Ok(())
    }
}

pub(crate) fn check_start_set(g: &Graph, s0: &[usize]) -> Result<()> {
    if s0.is_empty() {
        return Err(Error::InvalidArgument("start set is empty".into()));
    }
    let mut seen = vec![false; g.n()];
    for &v in s0 {
        g.check_vertex(v)?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidArgument(format!("vertex {v} appears twice in the start set")));
        }
    }
    Ok(())
}

/// First step at which two synchronized lazy walks from `u` and `v` share a
/// vertex.
pub fn simulate_meeting(g: &Graph, u: usize, v: usize, seed: u64, cap: u64) -> Result<SimSample> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    check_cap(cap)?;
    let (mut x, mut y) = (u, v);
    let mut t = 0;
    while x != y {
        if t >= cap {
            return Ok(SimSample::censored(cap, seed));
        }
        x = lazy_move(g, seed, t, 0, x);
        y = lazy_move(g, seed, t, 1, y);
        t += 1;
    }
    Ok(SimSample::finished(t, seed))
}

/// Coalescing walks started on `s0`. Walk `i` starts on `s0[i]` and has id
/// `i`; when walks land on the same vertex the smallest id survives. Returns
/// the first step with a single walk left.
pub fn simulate_coalescence(g: &Graph, s0: &[usize], seed: u64, cap: u64, record_trajectory: bool) -> Result<SimSample> {
    simulate_coalescence_to(g, s0, 1, seed, cap, record_trajectory)
}

/// Like [`simulate_coalescence`] but stops at the first step with at most
/// `target` walks.
pub fn simulate_coalescence_to(
    g: &Graph,
    s0: &[usize],
    target: usize,
    seed: u64,
    cap: u64,
    record_trajectory: bool,
) -> Result<SimSample> {
    check_start_set(g, s0)?;
    check_cap(cap)?;
    let target = target.max(1);
    let mut walks: Vec<(usize, u64)> = s0.iter().enumerate().map(|(i, &v)| (v, i as u64)).collect();
    let mut stamp = vec![0u64; g.n()];
    let mut cp = Checkpoints::new(record_trajectory);
    let mut t = 0;
    loop {
        cp.observe(t, walks.len());
        if walks.len() <= target {
            return Ok(cp.finish(t, walks.len(), SimSample::finished(t, seed)));
        }
        if t >= cap {
            return Ok(cp.finish(t, walks.len(), SimSample::censored(cap, seed)));
        }
        let mark = t + 1;
        walks.retain_mut(|(pos, id)| {
            let dest = lazy_move(g, seed, t, *id, *pos);
            *pos = dest;
            // Walks are kept in id order, so the first arrival has the min id.
            std::mem::replace(&mut stamp[dest], mark) != mark
        });
        t += 1;
    }
}

/// Stopping rule for the immortal process.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImmortalStop {
    /// Stop once at most `k` walks are alive.
    Walks,
    /// Stop once at most `k` mortal (non-immortal) walks are alive.
    MortalWalks,
}

/// The process in which walks whose ids are in `immortal` never die.
///
/// On every vertex after each step: if an immortal walk arrived, all arriving
/// immortal walks survive and every mortal arrival is killed; otherwise the
/// arriving walk with the smallest id survives. Walk `i` starts on `s0[i]`.
pub fn simulate_immortal(
    g: &Graph,
    s0: &[usize],
    immortal: &[usize],
    target_k: usize,
    stop: ImmortalStop,
    seed: u64,
    cap: u64,
) -> Result<SimSample> {
    check_start_set(g, s0)?;
    check_cap(cap)?;
    let flags = immortal_flags(s0.len(), immortal)?;
    if target_k == 0 && stop == ImmortalStop::Walks {
        return Err(Error::InvalidArgument("target_k must be at least 1".into()));
    }
    let mut walks: Vec<(usize, u64)> = s0.iter().enumerate().map(|(i, &v)| (v, i as u64)).collect();
    let mut g1_stamp = vec![0u64; g.n()];
    let mut g2_stamp = vec![0u64; g.n()];
    let count = |w: &[(usize, u64)]| match stop {
        ImmortalStop::Walks => w.len(),
        ImmortalStop::MortalWalks => w.iter().filter(|(_, id)| !flags[*id as usize]).count(),
    };
    let mut t = 0;
    loop {
        if count(&walks) <= target_k {
            return Ok(SimSample::finished(t, seed));
        }
        if t >= cap {
            return Ok(SimSample::censored(cap, seed));
        }
        let mark = t + 1;
        for (pos, id) in walks.iter_mut() {
            *pos = lazy_move(g, seed, t, *id, *pos);
            if flags[*id as usize] {
                g1_stamp[*pos] = mark;
            }
        }
        walks.retain(|&(pos, id)| {
            flags[id as usize]
                || (g1_stamp[pos] != mark && std::mem::replace(&mut g2_stamp[pos], mark) != mark)
        });
        t += 1;
    }
}

pub(crate) fn immortal_flags(walks: usize, immortal: &[usize]) -> Result<Vec<bool>> {
    let mut flags = vec![false; walks];
    for &id in immortal {
        if id >= walks {
            return Err(Error::InvalidIds(format!("immortal id {id} but only {walks} walks")));
        }
        if std::mem::replace(&mut flags[id], true) {
            return Err(Error::InvalidIds(format!("immortal id {id} listed twice")));
        }
    }
    Ok(flags)
}
