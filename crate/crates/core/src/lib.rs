//! Merit-based late fusion of classifier scores.
//!
//! Per-model probability tables are combined with a weighted linear sum,
//! and the weights are chosen by minimizing validation error with one of
//! five derivative-free searches (particle swarm, genetic algorithm, grid
//! search, Powell, Nelder–Mead) or set equal as a baseline.
//!
//! ```
//! use meritfuse_core::fusion::{equal_weights, fuse, predict};
//! use meritfuse_core::scoreio::{align, LabelVector, ScoreMatrix};
//!
//! let ids = vec!["a".to_string(), "b".to_string()];
//! let m1 = ScoreMatrix::from_rows("m1", ids.clone(), vec![vec![0.9, 0.1], vec![0.4, 0.6]]).unwrap();
//! let m2 = ScoreMatrix::from_rows("m2", ids.clone(), vec![vec![0.3, 0.7], vec![0.2, 0.8]]).unwrap();
//! let data = align(vec![m1, m2], LabelVector::new(ids, vec![0, 1]).unwrap()).unwrap();
//! let fused = fuse(&data, &equal_weights(2).unwrap()).unwrap();
//! assert_eq!(predict(&fused).predicted, vec![0, 1]);
//! ```

pub mod cli;
pub mod error;
pub mod fusion;
pub mod objective;
pub mod optimizers;
pub mod scoreio;
pub mod textprep;

pub use error::{Error, Result};
pub use fusion::{FusedScores, Predictions, WeightVector};
pub use objective::{MetricsReport, ObjectiveVariant};
pub use optimizers::{Method, OptResult, OptimizerConfig};
pub use scoreio::{FusionDataset, LabelVector, ScoreMatrix};
