//! Exact and floating-point computations on the cohomogeneity-one
//! `G2 x SO(2)` manifolds: octonions, the Lie algebra `g2`, an
//! invariant-metric curvature engine, the Shimada charts and the
//! Brieskorn model, and the curvature obstruction along the singular orbit.

pub mod appendix_suite;
pub mod brieskorn;
pub mod error;
pub mod linalg;
pub mod lie_g2;
pub mod metric_engine;
pub mod obstruction;
pub mod octonion;
pub mod poly;
pub mod sampling;
pub mod scalar;
pub mod shimada;
pub mod suites;

pub use error::{Error, Result};
