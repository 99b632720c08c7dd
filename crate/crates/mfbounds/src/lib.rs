//! Simulation and estimation toolkit for multifractal analysis of stochastic
//! processes: seedable path generators for self-similar, heavy-tailed and
//! cascade-type process families; standard and robust (max-of-increments)
//! partition functions with log-log scaling-function estimation; Legendre
//! spectra with closed-form reference curves; and bounds on the support of
//! the singularity spectrum.

pub mod cli;
pub mod error;
pub mod estimate;
pub mod harness;
pub mod io;
pub mod plot;
pub mod rng;
pub mod sim;
pub mod spectrum;
pub mod stats;

pub use error::{Error, Result};
