//! Pathwise coupling of the standard coalescing process with the immortal
//! process.
//!
//! The immortal process is run with moves keyed by walk id. Alongside it runs
//! an intermediate process over the same walks that labels immortal walks
//! alive or phantom; at most one walk per vertex is alive there. Each walk of
//! the standard process copies the move of the alive intermediate walk on its
//! vertex. Under this coupling the vertices occupied by the standard process
//! are always a subset of those occupied by alive intermediate walks, which
//! are in turn occupied in the immortal process.

use serde::Serialize;

use super::process::{check_start_set, immortal_flags, lazy_move};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoupledSample {
    /// First step with at most `k` walks in the standard process.
    pub standard: u64,
    /// First step with at most `k` walks in the immortal process.
    pub immortal: u64,
    /// Whether either process was cut off by the cap.
    pub censored: bool,
    /// Whether `|standard occupied| <= |immortal walks|` held at every step.
    pub dominated: bool,
    /// Whether every standard-process vertex carried an alive intermediate
    /// walk at every step.
    pub inclusion_held: bool,
    pub seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Label {
    Alive,
    Phantom,
}

struct Walk {
    pos: usize,
    id: u64,
    immortal: bool,
    label: Label,
}

pub fn coupled_run(
    g: &Graph,
    s0: &[usize],
    immortal: &[usize],
    target_k: usize,
    seed: u64,
    cap: u64,
) -> Result<CoupledSample> {
    check_start_set(g, s0)?;
    let flags = immortal_flags(s0.len(), immortal)?;
    if target_k == 0 {
        return Err(Error::InvalidArgument("target_k must be at least 1".into()));
    }
    let n = g.n();
    let mut walks: Vec<Walk> = s0
        .iter()
        .enumerate()
        .map(|(i, &v)| Walk { pos: v, id: i as u64, immortal: flags[i], label: Label::Alive })
        .collect();
    let mut standard: Vec<usize> = s0.to_vec();

    let mut alive_at = vec![usize::MAX; n];
    let mut occupied = vec![0u64; n];
    let mut order: Vec<usize> = Vec::new();
    let mut t_std = None;
    let mut t_imm = None;
    let mut dominated = true;
    let mut inclusion_held = true;
    let mut t = 0u64;
    loop {
        if t_std.is_none() && standard.len() <= target_k {
            t_std = Some(t);
        }
        if t_imm.is_none() && walks.len() <= target_k {
            t_imm = Some(t);
        }
        dominated &= standard.len() <= walks.len();
        if t_std.is_some() && t_imm.is_some() {
            break;
        }
        if t >= cap {
            return Ok(CoupledSample {
                standard: t_std.unwrap_or(cap),
                immortal: t_imm.unwrap_or(cap),
                censored: true,
                dominated,
                inclusion_held,
                seed,
            });
        }

        for (i, w) in walks.iter().enumerate() {
            if w.label == Label::Alive {
                alive_at[w.pos] = i;
            }
        }
        let dests: Vec<usize> = walks.iter().map(|w| lazy_move(g, seed, t, w.id, w.pos)).collect();

        // Standard process follows the alive intermediate walk on its vertex.
        let mark = t + 1;
        let mut next_std = Vec::with_capacity(standard.len());
        for &v in &standard {
            let leader = alive_at[v];
            let dest = if leader < walks.len() && walks[leader].pos == v && walks[leader].label == Label::Alive {
                dests[leader]
            } else {
                inclusion_held = false;
                lazy_move(g, seed ^ 0xdead_beef, t, v as u64, v)
            };
            if std::mem::replace(&mut occupied[dest], mark) != mark {
                next_std.push(dest);
            }
        }
        standard = next_std;
        for w in &walks {
            alive_at[w.pos] = usize::MAX;
        }
        for (w, &d) in walks.iter_mut().zip(&dests) {
            w.pos = d;
        }

        // Merge by vertex, arrivals in id order.
        order.clear();
        order.extend(0..walks.len());
        order.sort_unstable_by_key(|&i| (walks[i].pos, walks[i].id));
        let mut dead = vec![false; walks.len()];
        let mut start = 0;
        while start < order.len() {
            let pos = walks[order[start]].pos;
            let mut end = start;
            while end < order.len() && walks[order[end]].pos == pos {
                end += 1;
            }
            resolve_vertex(&mut walks, &order[start..end], &mut dead);
            start = end;
        }
        let mut i = 0;
        walks.retain(|_| {
            i += 1;
            !dead[i - 1]
        });

        for &v in &standard {
            let ok = walks.iter().any(|w| w.pos == v && w.label == Label::Alive);
            inclusion_held &= ok;
        }
        t += 1;
    }
    Ok(CoupledSample {
        standard: t_std.unwrap_or(cap),
        immortal: t_imm.unwrap_or(cap),
        censored: false,
        dominated,
        inclusion_held,
        seed,
    })
}

/// Applies the intermediate labelling and the immortal-process kill rule to
/// the walks that arrived at one vertex (`group` is sorted by id).
fn resolve_vertex(walks: &mut [Walk], group: &[usize], dead: &mut [bool]) {
    let first_g1 = group.iter().copied().find(|&i| walks[i].immortal);
    let any_g2 = group.iter().any(|&i| !walks[i].immortal);
    match first_g1 {
        Some(leader) => {
            let any_alive_g1 = group.iter().any(|&i| walks[i].immortal && walks[i].label == Label::Alive);
            if any_alive_g1 || any_g2 {
                for &i in group {
                    if walks[i].immortal {
                        walks[i].label = if i == leader { Label::Alive } else { Label::Phantom };
                    } else {
                        dead[i] = true;
                    }
                }
            }
        }
        None => {
            for &i in &group[1..] {
                dead[i] = true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalesce::process::{simulate_coalescence_to, simulate_immortal, ImmortalStop};
    use crate::graph::{generate, FamilySpec};

    #[test]
    fn standard_never_exceeds_immortal() {
        for spec in [
            FamilySpec::Cycle { n: 16 },
            FamilySpec::Star { n: 12 },
            FamilySpec::Grid { dim: 2, side: 4 },
            FamilySpec::Barbell { n: 16 },
        ] {
            let g = generate(&spec, 0).unwrap();
            let all: Vec<usize> = (0..g.n()).collect();
            for seed in 0..200 {
                let s = coupled_run(&g, &all, &[0, 3, 5, 9], 4, seed, 1 << 30).unwrap();
                assert!(s.dominated && s.inclusion_held, "{spec:?} seed {seed}");
                assert!(s.standard <= s.immortal);
            }
        }
    }

    #[test]
    fn immortal_side_matches_the_simulator() {
        let g = generate(&FamilySpec::Cycle { n: 12 }, 0).unwrap();
        let all: Vec<usize> = (0..12).collect();
        for seed in 0..100 {
            let s = coupled_run(&g, &all, &[0, 1, 2], 3, seed, 1 << 30).unwrap();
            let imm = simulate_immortal(&g, &all, &[0, 1, 2], 3, ImmortalStop::Walks, seed, 1 << 30).unwrap();
            assert_eq!(s.immortal, imm.value);
        }
    }

    #[test]
    fn min_id_only_coincides_with_standard() {
        let g = generate(&FamilySpec::Cycle { n: 10 }, 0).unwrap();
        let all: Vec<usize> = (0..10).collect();
        for seed in 0..100 {
            let s = coupled_run(&g, &all, &[0], 2, seed, 1 << 30).unwrap();
            let std = simulate_coalescence_to(&g, &all, 2, seed, 1 << 30, false).unwrap();
            assert_eq!(s.standard, s.immortal);
            assert_eq!(s.standard, std.value);
        }
    }
}
