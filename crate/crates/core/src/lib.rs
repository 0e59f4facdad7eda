//! Simulation laboratory for evolutionarily stable strategies (ESS) of random
//! symmetric games and for the vertices of random planar polygons.
//!
//! * [`distributions`]: the payoff/coordinate laws and their tail classes.
//! * [`game`]: random games and exact ESS certification.
//! * [`hull`]: convex hulls, positive-normal edges, the two-point event and
//!   its conditional probability `U`.
//! * [`stats`]: summaries, Poisson and binomial comparisons.
//! * [`experiments`]: seeded, trial-parallel Monte Carlo estimators.
//! * [`cli`]: the `esslab` command-line front end and its file formats.

// `!(x < y)` is used on purpose: NaN must fail every strict test.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod distributions;
pub mod error;
pub mod experiments;
pub mod game;
pub mod hull;
pub mod rng;
pub mod stats;

pub use distributions::{DistributionSpec, Family, TailClass};
pub use error::{Error, Result};
pub use rng::Stream;
