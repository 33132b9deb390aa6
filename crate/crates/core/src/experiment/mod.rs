//! Batch runner: sweeps over families and sizes, exact and Monte Carlo
//! quantities, bound checks, scaling fits and CSV/JSON artifacts.

mod config;
mod fit;
mod run;

pub use config::{ExperimentConfig, Quantity, SizeKind, Sweep};
pub use fit::{fit_scaling, ScalingFit, ScalingModel, MIN_FIT_POINTS};
pub use run::{far_pair, file_stem, run, run_point, write_atomic, EstimateRecord, PointInput, Record, RunSummary, CSV_HEADER};

/// Environment variable that sets the number of worker threads. It never
/// affects results.
pub const WORKERS_ENV: &str = "COALWALK_WORKERS";

/// Configures the global worker pool from [`WORKERS_ENV`], if set.
pub fn init_workers_from_env() -> crate::Result<()> {
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let n: usize = v
            .parse()
            .map_err(|_| crate::Error::Config(format!("{WORKERS_ENV} must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| crate::Error::Config(e.to_string()))?;
    }
    Ok(())
}
