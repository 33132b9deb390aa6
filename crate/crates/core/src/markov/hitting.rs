use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use super::dist::stationary;
use super::ExactConfig;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HittingMethod {
    DenseLu,
    GaussSeidel,
}

/// Expected hitting times of one target from every start vertex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HittingProfile {
    pub target: usize,
    /// `h[u] = t_hit(u, target)`
    pub h: Vec<f64>,
    /// `max_u |((I - P) h)(u) - 1|` over `u != target`.
    pub residual: f64,
    pub method: HittingMethod,
}

impl HittingProfile {
    pub fn max(&self) -> f64 {
        self.h.iter().copied().fold(0.0, f64::max)
    }
}

/// `max_{u != v} |h(u) - ½ h(u) - Σ_w h(w) / (2 deg u) - 1|` with `h(v) = 0`.
pub(crate) fn hitting_residual(g: &Graph, v: usize, h: &[f64]) -> f64 {
    (0..g.n())
        .filter(|&u| u != v)
        .map(|u| {
            let s: f64 = g.neighbors(u).iter().map(|&w| h[w as usize]).sum();
            (0.5 * h[u] - s / (2 * g.degree(u)) as f64 - 1.0).abs()
        })
        .fold(0.0, f64::max)
}

/// Solves `(I - P) h = 1` on `V \ {v}` with `h(v) = 0`.
pub fn hitting_to(g: &Graph, v: usize) -> Result<HittingProfile> {
    hitting_to_with(g, v, &ExactConfig::default())
}

pub fn hitting_to_with(g: &Graph, v: usize, cfg: &ExactConfig) -> Result<HittingProfile> {
    g.check_vertex(v)?;
    let n = g.n();
    if n == 1 {
        return Ok(HittingProfile { target: v, h: vec![0.0], residual: 0.0, method: HittingMethod::DenseLu });
    }
    let (h, method) = if n <= cfg.hitting_dense_limit {
        (dense_hitting(g, v)?, HittingMethod::DenseLu)
    } else {
        (gauss_seidel_hitting(g, v, cfg)?, HittingMethod::GaussSeidel)
    };
    let residual = hitting_residual(g, v, &h);
    if residual.is_nan() || residual > cfg.residual_per_vertex * n as f64 {
        return Err(Error::SolverFailure(format!("hitting residual {residual:e} too large")));
    }
    Ok(HittingProfile { target: v, h, residual, method })
}

fn dense_hitting(g: &Graph, v: usize) -> Result<Vec<f64>> {
    let n = g.n();
    let idx = |u: usize| if u < v { u } else { u - 1 };
    let k = n - 1;
    let mut a = DMatrix::<f64>::zeros(k, k);
    for u in (0..n).filter(|&u| u != v) {
        let i = idx(u);
        a[(i, i)] += 0.5;
        let w = 1.0 / (2 * g.degree(u)) as f64;
        for &x in g.neighbors(u) {
            let x = x as usize;
            if x != v {
                a[(i, idx(x))] -= w;
            }
        }
    }
    let b = nalgebra::DVector::from_element(k, 1.0);
    let sol = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::SolverFailure("singular hitting system".into()))?;
    let mut h = vec![0.0; n];
    for u in (0..n).filter(|&u| u != v) {
        h[u] = sol[idx(u)];
    }
    Ok(h)
}

/// Gauss–Seidel on the rearranged system `h(u) = 2 + mean_{w ~ u} h(w)`.
fn gauss_seidel_hitting(g: &Graph, v: usize, cfg: &ExactConfig) -> Result<Vec<f64>> {
    let n = g.n();
    let mut h = vec![0.0; n];
    let tol = cfg.gauss_seidel_tol;
    for sweep in 0..cfg.gauss_seidel_sweeps {
        for u in (0..n).filter(|&u| u != v) {
            let s: f64 = g.neighbors(u).iter().map(|&w| h[w as usize]).sum();
            h[u] = 2.0 + s / g.degree(u) as f64;
        }
        if sweep % 8 == 7 && hitting_residual(g, v, &h) <= tol {
            return Ok(h);
        }
    }
    Err(Error::SolverFailure(format!(
        "Gauss-Seidel did not reach residual {tol:e} in {} sweeps",
        cfg.gauss_seidel_sweeps
    )))
}

/// Full matrix `H[u][v] = t_hit(u, v)` (row-major) from the fundamental
/// matrix `Z = (I - P + 1π^T)^{-1}`: `H(u, v) = (Z_vv - Z_uv) / π(v)`.
pub fn hitting_matrix(g: &Graph) -> Result<Vec<f64>> {
    let n = g.n();
    if n == 1 {
        return Ok(vec![0.0]);
    }
    let pi = stationary(g);
    let mut a = DMatrix::<f64>::zeros(n, n);
    for u in 0..n {
        for v in 0..n {
            a[(u, v)] = pi[v];
        }
        a[(u, u)] += 0.5;
        let w = 1.0 / (2 * g.degree(u)) as f64;
        for &x in g.neighbors(u) {
            a[(u, x as usize)] -= w;
        }
    }
    let z = a
        .try_inverse()
        .ok_or_else(|| Error::SolverFailure("fundamental matrix is singular".into()))?;
    let mut h = vec![0.0; n * n];
    for u in 0..n {
        for v in 0..n {
            if u != v {
                h[u * n + v] = ((z[(v, v)] - z[(u, v)]) / pi[v]).max(0.0);
            }
        }
    }
    Ok(h)
}

/// `max_{u,v} t_hit(u, v)`.
///
/// Uses the fundamental matrix up to `cfg.fundamental_limit` vertices and
/// one iterative solve per target above it.
pub fn t_hit(g: &Graph) -> Result<f64> {
    t_hit_with(g, &ExactConfig::default())
}

pub fn t_hit_with(g: &Graph, cfg: &ExactConfig) -> Result<f64> {
    if g.n() == 1 {
        return Ok(0.0);
    }
    if g.n() <= cfg.fundamental_limit {
        return Ok(hitting_matrix(g)?.into_iter().fold(0.0, f64::max));
    }
    let maxima: Result<Vec<f64>> =
        (0..g.n()).into_par_iter().map(|v| hitting_to_with(g, v, cfg).map(|p| p.max())).collect();
    Ok(maxima?.into_iter().fold(0.0, f64::max))
}
