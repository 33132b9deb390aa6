use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Probability distribution over the vertices of a graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DistVector(Vec<f64>);

impl DistVector {
    /// Total-mass tolerance enforced by [`DistVector::new`].
    pub const SUM_TOLERANCE: f64 = 1e-12;

    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidArgument("empty distribution".into()));
        }
        if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(Error::InvalidArgument(format!("negative or non-finite probability {p}")));
        }
        let total = neumaier_sum(&probs);
        if (total - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::InvalidArgument(format!("probabilities sum to {total}")));
        }
        Ok(Self(probs))
    }

    pub fn point_mass(n: usize, u: usize) -> Self {
        let mut p = vec![0.0; n];
        p[u] = 1.0;
        Self(p)
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn get(&self, v: usize) -> f64 {
        self.0[v]
    }

    /// `Σ p(v)²`.
    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|p| p * p).sum()
    }
}

impl std::ops::Index<usize> for DistVector {
    type Output = f64;

    fn index(&self, v: usize) -> &f64 {
        &self.0[v]
    }
}

pub(crate) fn neumaier_sum(xs: &[f64]) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for &x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// `π(u) = deg(u) / 2m`.
pub fn stationary(g: &Graph) -> DistVector {
    if g.n() == 1 {
        return DistVector(vec![1.0]);
    }
    let two_m = (2 * g.m()) as f64;
    DistVector((0..g.n()).map(|u| g.degree(u) as f64 / two_m).collect())
}

/// One step `dst = src · P` of the lazy walk. `scratch` must have length `n`.
pub(crate) fn lazy_step_slice(g: &Graph, src: &[f64], dst: &mut [f64], scratch: &mut [f64]) {
    for (u, s) in scratch.iter_mut().enumerate() {
        let d = g.degree(u);
        *s = if d == 0 { 0.0 } else { src[u] / (2 * d) as f64 };
    }
    for (v, out) in dst.iter_mut().enumerate() {
        let inflow: f64 = g.neighbors(v).iter().map(|&u| scratch[u as usize]).sum();
        *out = if g.degree(v) == 0 { src[v] } else { 0.5 * src[v] + inflow };
    }
}

/// `d P` for the lazy transition matrix: stay with probability ½, otherwise
/// move to a uniform neighbor.
pub fn lazy_step(g: &Graph, d: &DistVector) -> Result<DistVector> {
    if d.len() != g.n() {
        return Err(Error::LengthMismatch { left: d.len(), right: g.n() });
    }
    let mut out = vec![0.0; g.n()];
    let mut scratch = vec![0.0; g.n()];
    lazy_step_slice(g, d.as_slice(), &mut out, &mut scratch);
    Ok(DistVector(out))
}

/// Row `p^t_{u,·}`.
pub fn tstep_row(g: &Graph, u: usize, t: u64) -> Result<DistVector> {
    g.check_vertex(u)?;
    let n = g.n();
    let mut cur = DistVector::point_mass(n, u).into_vec();
    let mut next = vec![0.0; n];
    let mut scratch = vec![0.0; n];
    for _ in 0..t {
        lazy_step_slice(g, &cur, &mut next, &mut scratch);
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(DistVector(cur))
}

/// `½ Σ |a_i - b_i|`.
pub fn tv_distance(a: &DistVector, b: &DistVector) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(tv_slices(a.as_slice(), b.as_slice()))
}

#[inline]
pub(crate) fn tv_slices(a: &[f64], b: &[f64]) -> f64 {
    (0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()).min(1.0)
}

/// All `n` rows of `P^t`, advanced together.
pub(crate) struct RowEvolver<'g> {
    g: &'g Graph,
    rows: Vec<f64>,
    next: Vec<f64>,
    t: u64,
}

impl<'g> RowEvolver<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.n();
        let mut rows = vec![0.0; n * n];
        for u in 0..n {
            rows[u * n + u] = 1.0;
        }
        Self { g, rows, next: vec![0.0; n * n], t: 0 }
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn row(&self, u: usize) -> &[f64] {
        let n = self.g.n();
        &self.rows[u * n..(u + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.rows.chunks_exact(self.g.n())
    }

    pub fn step(&mut self) {
        let n = self.g.n();
        let g = self.g;
        self.next
            .par_chunks_mut(n)
            .zip(self.rows.par_chunks(n))
            .for_each_init(
                || vec![0.0; n],
                |scratch, (dst, src)| lazy_step_slice(g, src, dst, scratch),
            );
        std::mem::swap(&mut self.rows, &mut self.next);
        self.t += 1;
    }
}
