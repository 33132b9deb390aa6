use super::sample::SimSample;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

/// Synchronous voter model from all-distinct opinions.
///
/// Each round every vertex independently either keeps its opinion (with
/// probability ½, only when `lazy`) or copies the previous-round opinion of a
/// uniform neighbor. The lazy variant is the time-reversal dual of lazy
/// coalescing walks started from every vertex. Returns the first round with a
/// single opinion left.
pub fn simulate_voter(g: &Graph, seed: u64, cap: u64, lazy: bool) -> Result<SimSample> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    let n = g.n();
    let mut opinion: Vec<u32> = (0..n as u32).collect();
    let mut next = opinion.clone();
    let mut support = vec![1usize; n];
    let mut distinct = n;
    let mut t = 0;
    while distinct > 1 {
        if t >= cap {
            return Ok(SimSample::censored(cap, seed));
        }
        for v in 0..n {
            let w = rng::word(seed, t, v as u64);
            let deg = g.degree(v);
            let pick = if lazy {
                rng::lazy_choice(w, deg)
            } else {
                Some(((w as u128 * deg as u128) >> 64) as usize)
            };
            next[v] = match pick {
                None => opinion[v],
                Some(i) => opinion[g.neighbors(v)[i] as usize],
            };
        }
        support.iter_mut().for_each(|c| *c = 0);
        distinct = 0;
        for &o in &next {
            let c = &mut support[o as usize];
            distinct += (*c == 0) as usize;
            *c += 1;
        }
        std::mem::swap(&mut opinion, &mut next);
        t += 1;
    }
    Ok(SimSample::finished(t, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    #[test]
    fn single_vertex_is_immediate() {
        let g = Graph::from_edges(1, []).unwrap();
        assert_eq!(simulate_voter(&g, 0, 10, true).unwrap().value, 0);
    }

    #[test]
    fn k2_lazy_mean_is_two() {
        // Consensus happens exactly when one of the two vertices copies: 1/2
        // per round.
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let total: u64 = (0..20_000).map(|s| simulate_voter(&g, s, 1000, true).unwrap().value).sum();
        let mean = total as f64 / 20_000.0;
        assert!((mean - 2.0).abs() < 0.05, "{mean}");
    }

    #[test]
    fn non_lazy_on_odd_cycle_reaches_consensus() {
        let g = generate(&FamilySpec::Cycle { n: 9 }, 0).unwrap();
        let s = simulate_voter(&g, 4, 1_000_000, false).unwrap();
        assert!(!s.censored);
    }

    #[test]
    fn deterministic() {
        let g = generate(&FamilySpec::Star { n: 30 }, 0).unwrap();
        assert_eq!(simulate_voter(&g, 77, 10_000, true), simulate_voter(&g, 77, 10_000, true));
    }
}
