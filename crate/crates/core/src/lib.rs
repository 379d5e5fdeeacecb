//! Benchmarking iterative search heuristics on submodular optimization
//! problems.
//!
//! The crate covers the whole pipeline of an experiment:
//!
//! * [`instance`] parses graph and packing-while-traveling instances,
//! * [`constraints`] maps search points to (possibly chance-constrained) costs,
//! * [`problems`] defines the penalized benchmark objectives and exact oracles,
//! * [`operators`] and [`algorithms`] provide twelve baseline optimizers,
//! * [`logger`] persists improvement traces,
//! * [`analysis`] computes ERT, ECDF, glicko-2 and win-fraction statistics,
//! * [`harness`] runs configured experiment grids.

pub mod algorithms;
pub mod analysis;
pub mod bitstring;
pub mod constraints;
pub mod harness;
pub mod instance;
pub mod logger;
pub mod operators;
pub mod problems;
pub mod rng;

pub use bitstring::BitString;
pub use rng::RngStream;
