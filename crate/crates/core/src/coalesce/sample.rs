use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outcome of one simulated trial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimSample {
    /// Steps until the stopping condition, or the cap when censored.
    pub value: u64,
    pub censored: bool,
    pub seed: u64,
    /// `(t, active count)` at `t = 0, 1, 2, 4, 8, ...` and at the final step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<Vec<(u64, usize)>>,
}

impl SimSample {
    pub(crate) fn finished(value: u64, seed: u64) -> Self {
        Self { value, censored: false, seed, trajectory: None }
    }

    pub(crate) fn censored(cap: u64, seed: u64) -> Self {
        Self { value: cap, censored: true, seed, trajectory: None }
    }
}

/// Records active counts at power-of-two steps.
pub(crate) struct Checkpoints(Option<Vec<(u64, usize)>>);

impl Checkpoints {
    pub fn new(enabled: bool) -> Self {
        Self(enabled.then(Vec::new))
    }

    #[inline]
    pub fn observe(&mut self, t: u64, count: usize) {
        if let Some(v) = self.0.as_mut() {
            if t == 0 || t.is_power_of_two() {
                v.push((t, count));
            }
        }
    }

    pub fn finish(mut self, t: u64, count: usize, mut sample: SimSample) -> SimSample {
        if let Some(v) = self.0.as_mut() {
            if v.last().map(|&(s, _)| s) != Some(t) {
                v.push((t, count));
            }
        }
        sample.trajectory = self.0;
        sample
    }
}

/// Default step cap `50 n³`.
pub fn default_cap(n: usize) -> u64 {
    (n as u64).saturating_pow(3).saturating_mul(50).max(1)
}

/// Summary of an ensemble of trials. Censored samples are excluded from the
/// moments and counted separately.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub ci95_lo: f64,
    pub ci95_hi: f64,
    pub trials: usize,
    pub censored_count: usize,
    /// Set when any sample hit the cap.
    pub censored_warning: bool,
}

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Pairwise (cascade) summation; the result depends only on the input order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

impl Estimate {
    pub fn from_samples(samples: &[SimSample], cap: u64) -> Result<Self> {
        let values: Vec<f64> = samples.iter().filter(|s| !s.censored).map(|s| s.value as f64).collect();
        let censored_count = samples.len() - values.len();
        if values.is_empty() {
            return Err(Error::AllCensored { trials: samples.len(), cap });
        }
        Ok(Self::from_values(&values, samples.len(), censored_count))
    }

    pub(crate) fn from_values(values: &[f64], trials: usize, censored_count: usize) -> Self {
        let k = values.len() as f64;
        let mean = pairwise_sum(values) / k;
        let sq: Vec<f64> = values.iter().map(|x| (x - mean) * (x - mean)).collect();
        let var = if values.len() > 1 { pairwise_sum(&sq) / (k - 1.0) } else { 0.0 };
        let stderr = (var / k).sqrt();
        Self {
            mean,
            stderr,
            ci95_lo: mean - Z95 * stderr,
            ci95_hi: mean + Z95 * stderr,
            trials,
            censored_count,
            censored_warning: censored_count > 0,
        }
    }

    /// Whether the two 95% intervals intersect.
    pub fn overlaps(&self, other: &Estimate) -> bool {
        self.ci95_lo <= other.ci95_hi && other.ci95_lo <= self.ci95_hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.ci95_lo <= x && x <= self.ci95_hi
    }
}
