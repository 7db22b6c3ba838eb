//! Exact Rademacher-type formula for lower 1-run overpartitions, and the
//! machinery it rests on: exact q-series, eta multipliers, modified
//! Kloosterman sums, Mordell and Bessel integrals, and numerical checks of
//! the modular transformation laws.

pub mod cli;
pub mod error;
pub mod hpnum;
pub mod integrals;
pub mod kloosterman;
pub mod modular;
pub mod qseries;
pub mod rademacher;
pub mod transform;

pub use error::{Error, Result};
