use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_FIT_POINTS: usize = 4;

/// Growth model a series is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingModel {
    /// `T ∝ n^a`, fitted by least squares of `ln T` on `ln n`.
    Power,
    /// `T ∝ n·ln n`, reported as the spread of `T / (n ln n)`.
    NLogN,
    /// `T ∝ ln n`, reported as the spread of `T / ln n`.
    Log,
}

impl ScalingModel {
    fn reference(self, n: f64) -> f64 {
        match self {
            ScalingModel::Power => 1.0,
            ScalingModel::NLogN => n * n.ln(),
            ScalingModel::Log => n.ln(),
        }
    }
}

impl fmt::Display for ScalingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalingModel::Power => "n^a",
            ScalingModel::NLogN => "n log n",
            ScalingModel::Log => "log n",
        })
    }
}

impl FromStr for ScalingModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "n^a" | "power" => Ok(ScalingModel::Power),
            "n log n" | "nlogn" | "n_log_n" => Ok(ScalingModel::NLogN),
            "log n" | "log" => Ok(ScalingModel::Log),
            other => Err(Error::InvalidArgument(format!("unknown scaling model {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingFit {
    pub model: ScalingModel,
    /// Fitted exponent (power model only).
    pub exponent: Option<f64>,
    pub stderr: Option<f64>,
    pub r_squared: Option<f64>,
    /// `T / reference(n)` at every point; for the power model the reference
    /// is `n^a` with the fitted `a`.
    pub ratios: Vec<f64>,
    /// `max ratio / min ratio`.
    pub ratio_spread: f64,
    pub points: usize,
}

/// Fits `series` of `(n, T)` against `model`.
pub fn fit_scaling(series: &[(f64, f64)], model: ScalingModel) -> Result<ScalingFit> {
    if series.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientPoints { needed: MIN_FIT_POINTS, got: series.len() });
    }
    if series.iter().any(|&(n, t)| !(n > 1.0 && t > 0.0 && n.is_finite() && t.is_finite())) {
        return Err(Error::InvalidArgument("fit needs n > 1 and positive finite values".into()));
    }
    let (exponent, stderr, r_squared, ratios) = match model {
        ScalingModel::Power => {
            let xs: Vec<f64> = series.iter().map(|p| p.0.ln()).collect();
            let ys: Vec<f64> = series.iter().map(|p| p.1.ln()).collect();
            let (a, b, se, r2) = ols(&xs, &ys);
            let ratios = series.iter().map(|&(n, t)| t / (b.exp() * n.powf(a))).collect();
            (Some(a), Some(se), Some(r2), ratios)
        }
        _ => (None, None, None, series.iter().map(|&(n, t)| t / model.reference(n)).collect::<Vec<_>>()),
    };
    let max = ratios.iter().copied().fold(f64::MIN, f64::max);
    let min = ratios.iter().copied().fold(f64::MAX, f64::min);
    Ok(ScalingFit { model, exponent, stderr, r_squared, ratios, ratio_spread: max / min, points: series.len() })
}

/// Simple linear regression `y = a x + b`: returns slope, intercept, slope
/// standard error and R².
fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64, f64, f64) {
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let a = sxy / sxx;
    let b = my - a * mx;
    let sse: f64 = xs.iter().zip(ys).map(|(x, y)| (y - a * x - b).powi(2)).sum();
    let se = (sse / (k - 2.0) / sxx).sqrt();
    let r2 = if syy > 0.0 { (1.0 - sse / syy).clamp(0.0, 1.0) } else { 1.0 };
    (a, b, se, r2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_square_law() {
        let s: Vec<(f64, f64)> = [8.0, 16.0, 32.0, 64.0, 128.0].iter().map(|&n| (n, n * n)).collect();
        let f = fit_scaling(&s, ScalingModel::Power).unwrap();
        assert!((f.exponent.unwrap() - 2.0).abs() < 1e-9);
        assert!(f.stderr.unwrap() < 1e-9);
        assert!((f.r_squared.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn n_log_n_ratio_is_flat() {
        let s: Vec<(f64, f64)> = [63.0f64, 127.0, 255.0, 511.0].iter().map(|&n| (n, 3.0 * n * n.ln())).collect();
        let f = fit_scaling(&s, ScalingModel::NLogN).unwrap();
        assert!(f.exponent.is_none());
        assert!((f.ratio_spread - 1.0).abs() < 1e-12);
        assert!((f.ratios[0] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_points() {
        let s = [(2.0, 1.0), (4.0, 2.0), (8.0, 3.0)];
        assert_eq!(
            fit_scaling(&s, ScalingModel::Power),
            Err(Error::InsufficientPoints { needed: 4, got: 3 })
        );
    }

    #[test]
    fn model_names_round_trip() {
        for m in [ScalingModel::Power, ScalingModel::NLogN, ScalingModel::Log] {
            assert_eq!(m.to_string().parse::<ScalingModel>().unwrap(), m);
        }
    }
}
