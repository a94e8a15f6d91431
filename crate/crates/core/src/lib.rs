//! Exact computation of signed Stirling numbers of the first kind, Bernoulli
//! numbers of the second kind (Gregory coefficients), harmonic numbers and the
//! auxiliary sequence `a(n, k)`, each by several independent routes.
//!
//! Every value is an exact [`ExactRational`] or [`ExactInteger`]. The routes are
//! meant to be compared against each other: [`stirling::StirlingTriangle`] is the
//! workhorse, and the nested harmonic sums, column recurrence and generating
//! function expansions are kept around as oracles for it.
//!
//! Per-`n` work in the report and probe drivers runs on rayon when the
//! `parallel` feature is enabled (the default) and sequentially otherwise.

pub mod a_sequence;
pub mod bernoulli;
pub mod calculus;
mod error;
mod exec;
pub mod numeric;
pub mod series;
pub mod stirling;

pub use error::{Error, Result};
pub use exec::Execution;
pub use numeric::{ExactInteger, ExactRational};
