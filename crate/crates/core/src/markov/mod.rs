//! Exact quantities of the lazy random walk: stationary distribution, t-step
//! rows, mixing and separation times, spectral gap, hitting and meeting
//! times, and collision statistics.

mod collision;
mod dist;
mod hitting;
mod meeting;
mod mixing;
mod spectral;

pub use collision::{collision_stats, collision_stats_for_window, collision_stats_with, CollisionStats};
pub use dist::{lazy_step, stationary, tstep_row, tv_distance, DistVector};
pub use hitting::{hitting_matrix, hitting_to, hitting_to_with, t_hit, t_hit_with, HittingMethod, HittingProfile};
pub use meeting::{meeting_exact, meeting_exact_with, meeting_jacobi, MeetingSolution};
pub use mixing::{
    distance_profile, mixing_time, mixing_time_with, separation_time, separation_time_with, DistanceSample,
    MixingTime, DEFAULT_EPS,
};
pub use spectral::{spectral, spectral_with, SpectralMethod, SpectralSummary};


use serde::{Deserialize, Serialize};

/// Size thresholds and solver tolerances for the exact computations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExactConfig {
    /// Largest `n` for which the pairwise mixing distance is evaluated.
    pub dense_mixing_threshold: usize,
    /// Cap on `t` for mixing and separation searches.
    pub t_cap: u64,
    pub spectral_dense_limit: usize,
    pub power_iteration_cap: u64,
    pub hitting_dense_limit: usize,
    /// Largest `n` for which `t_hit` is computed from the fundamental matrix.
    pub fundamental_limit: usize,
    pub gauss_seidel_tol: f64,
    pub gauss_seidel_sweeps: u64,
    /// Accepted hitting residual is `residual_per_vertex * n`.
    pub residual_per_vertex: f64,
    /// Largest `n` for the product-chain meeting solve.
    pub meeting_limit: usize,
    pub cg_tol: f64,
    pub cg_max_iterations: u64,
    pub meeting_residual_tol: f64,
}

impl Default for ExactConfig {
    fn default() -> Self {
        Self {
            dense_mixing_threshold: 256,
            t_cap: 1_000_000,
            spectral_dense_limit: 2048,
            power_iteration_cap: 2_000_000,
            hitting_dense_limit: 512,
            fundamental_limit: 2048,
            gauss_seidel_tol: 1e-10,
            gauss_seidel_sweeps: 10_000_000,
            residual_per_vertex: 1e-9,
            meeting_limit: 100,
            cg_tol: 1e-13,
            cg_max_iterations: 1_000_000,
            meeting_residual_tol: 1e-6,
        }
    }
}
