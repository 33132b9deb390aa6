//! Exact solvers and seeded Monte Carlo simulation for coalescing random
//! walks, the voter model, and the hitting, meeting and mixing times of lazy
//! random walks on undirected graphs.

pub mod error;
pub mod experiment;
pub mod graph;
pub mod bounds;
pub mod coalesce;
pub mod markov;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{FamilyKind, FamilySpec, Graph};
