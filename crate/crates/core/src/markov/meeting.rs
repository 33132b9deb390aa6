//! Exact meeting times from the product chain of two independent lazy walks.
//!
//! `M(u, v)` is the expected absorption time into the diagonal starting from
//! `(u, v)`. It satisfies `M = 1 + (P ⊗ P) M` off the diagonal and `M = 0` on
//! it. The product chain is reversible with respect to `π ⊗ π`, so after the
//! substitution `y = √(π⊗π) · M` the system becomes symmetric positive
//! definite and is solved by conjugate gradients. A plain Jacobi iteration is
//! kept as an independent route for cross-checking.

use rayon::prelude::*;
use serde::Serialize;

use super::dist::stationary;
use super::ExactConfig;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeetingSolution {
    /// `max_{u,v} t_meet(u, v)`
    pub t_meet: f64,
    /// `Σ π(u) π(v) t_meet(u, v)`
    pub t_meet_pi: f64,
    pub argmax: (usize, usize),
    /// Row-major `n × n` matrix of `t_meet(u, v)`.
    #[serde(skip)]
    pub times: Vec<f64>,
    pub n: usize,
    /// `max |((I - P⊗P) M)(u, v) - 1|` over off-diagonal pairs.
    pub residual: f64,
    pub iterations: u64,
}

impl MeetingSolution {
    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.times[u * self.n + v]
    }

    fn from_times(g: &Graph, times: Vec<f64>, iterations: u64) -> Self {
        let n = g.n();
        let pi = stationary(g);
        let mut best = (0.0, (0, 0));
        let mut avg = 0.0;
        for u in 0..n {
            for v in 0..n {
                let m = times[u * n + v];
                avg += pi[u] * pi[v] * m;
                if m > best.0 {
                    best = (m, (u, v));
                }
            }
        }
        let residual = product_residual(g, &times);
        Self { t_meet: best.0, t_meet_pi: avg, argmax: best.1, times, n, residual, iterations }
    }
}

/// `dst = P src P^T` for row-major `n × n` matrices, i.e. `(P⊗P) src`.
fn product_apply(g: &Graph, src: &[f64], tmp: &mut [f64], dst: &mut [f64]) {
    let n = g.n();
    // tmp = P src
    tmp.par_chunks_mut(n).enumerate().for_each(|(u, row)| {
        let w = 1.0 / (2 * g.degree(u)) as f64;
        for (v, r) in row.iter_mut().enumerate() {
            *r = 0.5 * src[u * n + v];
        }
        for &x in g.neighbors(u) {
            let s = &src[x as usize * n..(x as usize + 1) * n];
            for (r, &y) in row.iter_mut().zip(s) {
                *r += w * y;
            }
        }
    });
    // dst = tmp P^T
    dst.par_chunks_mut(n).enumerate().for_each(|(u, row)| {
        let t = &tmp[u * n..(u + 1) * n];
        for (v, r) in row.iter_mut().enumerate() {
            let w = 1.0 / (2 * g.degree(v)) as f64;
            let s: f64 = g.neighbors(v).iter().map(|&x| t[x as usize]).sum();
            *r = 0.5 * t[v] + w * s;
        }
    });
}

fn product_residual(g: &Graph, times: &[f64]) -> f64 {
    let n = g.n();
    let mut tmp = vec![0.0; n * n];
    let mut q = vec![0.0; n * n];
    product_apply(g, times, &mut tmp, &mut q);
    let mut worst = 0.0f64;
    for u in 0..n {
        for v in 0..n {
            if u != v {
                let i = u * n + v;
                worst = worst.max((times[i] - q[i] - 1.0).abs());
            }
        }
    }
    worst
}

/// `out = y - (A⊗A) y` restricted to off-diagonal entries, where
/// `A = D^{1/2} P D^{-1/2}`.
fn symmetric_apply(g: &Graph, isd: &[f64], y: &[f64], tmp: &mut [f64], out: &mut [f64]) {
    let n = g.n();
    tmp.par_chunks_mut(n).enumerate().for_each(|(u, row)| {
        for (v, r) in row.iter_mut().enumerate() {
            *r = 0.5 * y[u * n + v];
        }
        for &x in g.neighbors(u) {
            let w = 0.5 * isd[u] * isd[x as usize];
            let s = &y[x as usize * n..(x as usize + 1) * n];
            for (r, &val) in row.iter_mut().zip(s) {
                *r += w * val;
            }
        }
    });
    out.par_chunks_mut(n).enumerate().for_each(|(u, row)| {
        let t = &tmp[u * n..(u + 1) * n];
        for (v, r) in row.iter_mut().enumerate() {
            if u == v {
                *r = 0.0;
                continue;
            }
            let s: f64 = g.neighbors(v).iter().map(|&x| t[x as usize] * isd[x as usize]).sum();
            *r = y[u * n + v] - (0.5 * t[v] + 0.5 * isd[v] * s);
        }
    });
}

/// Dot product with a fixed chunking, so the result does not depend on the
/// number of worker threads.
fn dot(a: &[f64], b: &[f64]) -> f64 {
    const CHUNK: usize = 4096;
    let partial: Vec<f64> = a
        .par_chunks(CHUNK)
        .zip(b.par_chunks(CHUNK))
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>())
        .collect();
    partial.iter().sum()
}

/// Exact `t_meet`, `t_meet^π` and the full meeting-time matrix.
pub fn meeting_exact(g: &Graph) -> Result<MeetingSolution> {
    meeting_exact_with(g, &ExactConfig::default())
}

pub fn meeting_exact_with(g: &Graph, cfg: &ExactConfig) -> Result<MeetingSolution> {
    let n = g.n();
    if n > cfg.meeting_limit {
        return Err(Error::TooLarge { n, limit: cfg.meeting_limit });
    }
    if n == 1 {
        return Ok(MeetingSolution::from_times(g, vec![0.0], 0));
    }
    let pi = stationary(g);
    let sqrt_pi: Vec<f64> = pi.as_slice().iter().map(|p| p.sqrt()).collect();
    let isd: Vec<f64> = (0..n).map(|u| (g.degree(u) as f64).sqrt().recip()).collect();
    let mut b = vec![0.0; n * n];
    for u in 0..n {
        for v in 0..n {
            if u != v {
                b[u * n + v] = sqrt_pi[u] * sqrt_pi[v];
            }
        }
    }
    let b_norm = dot(&b, &b).sqrt();
    let mut y = vec![0.0; n * n];
    let mut r = b.clone();
    let mut p = r.clone();
    let mut ap = vec![0.0; n * n];
    let mut tmp = vec![0.0; n * n];
    let mut rr = dot(&r, &r);
    let mut iterations = 0;
    while rr.sqrt() > cfg.cg_tol * b_norm {
        if iterations >= cfg.cg_max_iterations {
            return Err(Error::SolverFailure(format!(
                "conjugate gradients stalled at relative residual {:e}",
                rr.sqrt() / b_norm
            )));
        }
        symmetric_apply(g, &isd, &p, &mut tmp, &mut ap);
        let alpha = rr / dot(&p, &ap);
        y.par_iter_mut().zip(&p).for_each(|(yi, pi)| *yi += alpha * pi);
        r.par_iter_mut().zip(&ap).for_each(|(ri, ai)| *ri -= alpha * ai);
        let rr_next = dot(&r, &r);
        let beta = rr_next / rr;
        p.par_iter_mut().zip(&r).for_each(|(pi, ri)| *pi = ri + beta * *pi);
        rr = rr_next;
        iterations += 1;
    }
    let times: Vec<f64> = (0..n * n)
        .map(|i| {
            let (u, v) = (i / n, i % n);
            if u == v {
                0.0
            } else {
                y[i] / (sqrt_pi[u] * sqrt_pi[v])
            }
        })
        .collect();
    let sol = MeetingSolution::from_times(g, times, iterations);
    if sol.residual > cfg.meeting_residual_tol {
        return Err(Error::SolverFailure(format!("meeting residual {:e} too large", sol.residual)));
    }
    Ok(sol)
}

/// Jacobi iteration `M ← 1 + (P⊗P) M` from `M = 0`, stopping when the largest
/// update falls below `tol`.
pub fn meeting_jacobi(g: &Graph, tol: f64, max_sweeps: u64) -> Result<MeetingSolution> {
    let n = g.n();
    let mut m = vec![0.0; n * n];
    let mut next = vec![0.0; n * n];
    let mut tmp = vec![0.0; n * n];
    for sweep in 0..max_sweeps {
        product_apply(g, &m, &mut tmp, &mut next);
        let mut delta = 0.0f64;
        for u in 0..n {
            for v in 0..n {
                let i = u * n + v;
                next[i] = if u == v { 0.0 } else { 1.0 + next[i] };
                delta = delta.max((next[i] - m[i]).abs());
            }
        }
        std::mem::swap(&mut m, &mut next);
        if delta <= tol {
            return Ok(MeetingSolution::from_times(g, m, sweep + 1));
        }
    }
    Err(Error::SolverFailure(format!("Jacobi did not converge in {max_sweeps} sweeps")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use approx::assert_relative_eq;

    #[test]
    fn k2_meets_in_two() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let s = meeting_exact(&g).unwrap();
        assert_relative_eq!(s.t_meet, 2.0, max_relative = 1e-10);
        assert_eq!(s.get(0, 0), 0.0);
        // π = (½, ½): half the mass starts on the diagonal.
        assert_relative_eq!(s.t_meet_pi, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn diagonal_zero_and_symmetric() {
        let g = generate(&FamilySpec::Barbell { n: 12 }, 0).unwrap();
        let s = meeting_exact(&g).unwrap();
        for u in 0..g.n() {
            assert_eq!(s.get(u, u), 0.0);
            for v in 0..g.n() {
                assert_relative_eq!(s.get(u, v), s.get(v, u), max_relative = 1e-9);
            }
        }
        assert!(s.residual < 1e-7);
    }

    #[test]
    fn conjugate_gradient_matches_jacobi() {
        for spec in [FamilySpec::Cycle { n: 8 }, FamilySpec::Star { n: 6 }, FamilySpec::Grid { dim: 2, side: 3 }] {
            let g = generate(&spec, 0).unwrap();
            let cg = meeting_exact(&g).unwrap();
            let jac = meeting_jacobi(&g, 1e-11, 1_000_000).unwrap();
            for i in 0..g.n() * g.n() {
                assert_relative_eq!(cg.times[i], jac.times[i], max_relative = 1e-6, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn too_large() {
        let g = generate(&FamilySpec::Cycle { n: 30 }, 0).unwrap();
        let cfg = ExactConfig { meeting_limit: 20, ..ExactConfig::default() };
        assert_eq!(meeting_exact_with(&g, &cfg).unwrap_err(), Error::TooLarge { n: 30, limit: 20 });
    }
}
