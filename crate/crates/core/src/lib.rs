//! PageRank and MarkovRank for finite directed networks.
//!
//! An [`AdjacencyMatrix`] is turned into column-stochastic
//! [`TransitionMatrix`] values ([`chain`]), whose eigenvalue-1 eigenvectors
//! give the rankings ([`eigenrank`]). [`rank_stats`] compares the resulting
//! rank statistics and [`experiments`] generates random block networks and
//! runs parameter sweeps.
//!
//! ```
//! use markovrank::{markovrank, pagerank, AdjacencyMatrix, Method, PowerIterConfig};
//!
//! let a = AdjacencyMatrix::from_rows(&[
//!     [0.0, 1.0, 0.0, 1.0],
//!     [1.0, 0.0, 1.0, 0.0],
//!     [0.0, 1.0, 0.0, 0.0],
//!     [0.0, 1.0, 0.0, 0.0],
//! ])?;
//! let cfg = PowerIterConfig::default();
//! let pr = pagerank(&a, 0.85, Method::Exact, &cfg)?;
//! let mr = markovrank(&a, 1.0, Method::Exact, &cfg)?;
//! assert!((pr.values()[1] - 0.4292090).abs() < 1e-6);
//! assert!((mr.values()[1] - 0.4369806).abs() < 1e-6);
//! # Ok::<(), markovrank::Error>(())
//! ```

pub mod chain;
pub mod eigenrank;
mod error;
pub mod experiments;
pub mod graph;
pub mod rank_stats;

pub use chain::{
    augment_adjacency, damped_transition, is_regular, transition_from_augmented,
    transition_from_patched, transition_generalized_inverse, AugmentedAdjacency, Provenance,
    Regularity, TransitionMatrix,
};
pub use eigenrank::{
    eigenvalue_one_space, markovrank, markovrank_matrix, pagerank, pagerank_matrix,
    stationary_exact, stationary_power, EigenSpace, InitialVector, Method, PowerIterConfig,
    PowerResult, ScoreVector,
};
pub use error::{Error, Result};
pub use experiments::{gen_block, gen_er, invariance_sweep, BlockSpec, SweepReport};
pub use graph::{AdjacencyMatrix, DegreeKind, DegreeVector, EdgeColumns};
pub use rank_stats::{agreement_count, is_finer, is_identical_rank, rank_statistic, RankStatistic};
