use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use super::ExactConfig;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralMethod {
    Dense,
    Iterative,
}

/// Second eigenvalue of the lazy transition matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralSummary {
    pub lambda2: f64,
    /// `1 - λ₂`
    pub gap: f64,
    pub method: SpectralMethod,
    /// `‖A x - λ₂ x‖₂` for the returned unit eigenvector of the symmetrized
    /// matrix.
    pub residual: f64,
}

/// Residual required from either method.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Entries of `A = D^{1/2} P D^{-1/2}`: `A_uu = ½`, `A_uv = 1 / (2 √(d_u d_v))`.
fn apply_symmetrized(g: &Graph, inv_sqrt_deg: &[f64], x: &[f64], out: &mut [f64]) {
    for (u, o) in out.iter_mut().enumerate() {
        let s: f64 = g.neighbors(u).iter().map(|&v| inv_sqrt_deg[v as usize] * x[v as usize]).sum();
        *o = 0.5 * x[u] + 0.5 * inv_sqrt_deg[u] * s;
    }
}

pub fn spectral(g: &Graph) -> Result<SpectralSummary> {
    spectral_with(g, &ExactConfig::default())
}

pub fn spectral_with(g: &Graph, cfg: &ExactConfig) -> Result<SpectralSummary> {
    let n = g.n();
    if n == 1 {
        return Ok(SpectralSummary { lambda2: 0.0, gap: 1.0, method: SpectralMethod::Dense, residual: 0.0 });
    }
    let inv_sqrt_deg: Vec<f64> = (0..n).map(|u| (g.degree(u) as f64).sqrt().recip()).collect();
    let (lambda2, vec, method) = if n <= cfg.spectral_dense_limit {
        dense(g, &inv_sqrt_deg)
    } else {
        power_iteration(g, &inv_sqrt_deg, cfg.power_iteration_cap)?
    };
    let mut ax = vec![0.0; n];
    apply_symmetrized(g, &inv_sqrt_deg, &vec, &mut ax);
    let residual = ax.iter().zip(&vec).map(|(a, x)| (a - lambda2 * x).powi(2)).sum::<f64>().sqrt();
    if residual > RESIDUAL_TOL {
        return Err(Error::ConvergenceFailure(format!("residual {residual:e} above {RESIDUAL_TOL:e}")));
    }
    // The lazy spectrum lies in [0, 1]; clamp rounding noise.
    let lambda2 = lambda2.clamp(0.0, 1.0);
    Ok(SpectralSummary { lambda2, gap: 1.0 - lambda2, method, residual })
}

fn dense(g: &Graph, inv_sqrt_deg: &[f64]) -> (f64, Vec<f64>, SpectralMethod) {
    let n = g.n();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for u in 0..n {
        a[(u, u)] = 0.5;
        for &v in g.neighbors(u) {
            a[(u, v as usize)] = 0.5 * inv_sqrt_deg[u] * inv_sqrt_deg[v as usize];
        }
    }
    let eig = SymmetricEigen::new(a);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let k = order[1];
    let v: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
    (eig.eigenvalues[k], v, SpectralMethod::Dense)
}

/// Power iteration on `A` with the top eigenvector `√π` projected out. The
/// remaining spectrum is non-negative, so the dominant eigenvalue left is λ₂.
fn power_iteration(g: &Graph, inv_sqrt_deg: &[f64], cap: u64) -> Result<(f64, Vec<f64>, SpectralMethod)> {
    let n = g.n();
    let two_m = (2 * g.m()) as f64;
    let top = DVector::from_iterator(n, (0..n).map(|u| (g.degree(u) as f64 / two_m).sqrt()));
    let deflate = |x: &mut DVector<f64>| {
        let c = x.dot(&top);
        x.axpy(-c, &top, 1.0);
        let norm = x.norm();
        if norm > 0.0 {
            *x /= norm;
        }
    };
    let mut x = DVector::from_iterator(n, (0..n).map(|u| rng::unit_f64(rng::word(0x5eed, 0, u as u64)) - 0.5));
    deflate(&mut x);
    let mut ax = DVector::zeros(n);
    for it in 0..cap {
        apply_symmetrized(g, inv_sqrt_deg, x.as_slice(), ax.as_mut_slice());
        let rho = x.dot(&ax);
        if it % 16 == 0 {
            let residual = (&ax - rho * &x).norm();
            if residual <= RESIDUAL_TOL * 0.5 {
                return Ok((rho, x.as_slice().to_vec(), SpectralMethod::Iterative));
            }
        }
        std::mem::swap(&mut x, &mut ax);
        deflate(&mut x);
    }
    Err(Error::ConvergenceFailure(format!("power iteration did not converge in {cap} iterations")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};
    use approx::assert_abs_diff_eq;

    #[test]
    fn k2_has_zero_second_eigenvalue() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let s = spectral(&g).unwrap();
        assert_abs_diff_eq!(s.lambda2, 0.0, epsilon = 1e-12);
        assert_eq!(s.gap, 1.0 - s.lambda2);
    }

    #[test]
    fn cycle_eight_closed_form() {
        let g = generate(&FamilySpec::Cycle { n: 8 }, 0).unwrap();
        let s = spectral(&g).unwrap();
        let expected = (1.0 + (2.0 * std::f64::consts::PI / 8.0).cos()) / 2.0;
        assert_abs_diff_eq!(s.lambda2, expected, epsilon = 1e-10);
        assert_eq!(s.method, SpectralMethod::Dense);
    }

    #[test]
    fn hypercube_closed_form() {
        // Lazy hypercube eigenvalues are 1 - k/dim.
        let g = generate(&FamilySpec::Hypercube { dim: 5 }, 0).unwrap();
        assert_abs_diff_eq!(spectral(&g).unwrap().lambda2, 0.8, epsilon = 1e-10);
    }

    #[test]
    fn iterative_agrees_with_dense() {
        for spec in [
            FamilySpec::Barbell { n: 24 },
            FamilySpec::Star { n: 20 },
            FamilySpec::RandomRegular { n: 60, degree: 3 },
            FamilySpec::BinaryTree { levels: 5 },
        ] {
            let g = generate(&spec, 1).unwrap();
            let dense = spectral(&g).unwrap();
            let cfg = ExactConfig { spectral_dense_limit: 0, ..ExactConfig::default() };
            let iter = spectral_with(&g, &cfg).unwrap();
            assert_eq!(iter.method, SpectralMethod::Iterative);
            assert_abs_diff_eq!(iter.lambda2, dense.lambda2, epsilon = 1e-8);
        }
    }

    #[test]
    fn non_negative_everywhere() {
        for spec in [FamilySpec::Star { n: 9 }, FamilySpec::Path { n: 10 }, FamilySpec::Clique { n: 7 }] {
            let s = spectral(&generate(&spec, 0).unwrap()).unwrap();
            assert!(s.lambda2 >= 0.0 && s.lambda2 < 1.0);
        }
    }
}
