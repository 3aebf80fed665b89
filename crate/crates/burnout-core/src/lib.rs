//! Core library for the burnout toolkit.
//!
//! The forest-fire process studied here lives on the half line (or a small
//! finite graph): vacant sites occupy at unit rate, and each time the origin
//! occupies, the whole occupied cluster through the origin burns out
//! instantly. The crate provides
//!
//! * `sim` - streaming Monte Carlo samplers of burnout intervals and a
//!   discrete-event simulator for finite graphs,
//! * `exact` - exact and multi-precision computation of the interval moment
//!   generating functions, their moments, and the alternating binomial sums
//!   behind them,
//! * `special` - the Dickman function, exponential integrals, the limiting
//!   interval law and the generalized Dickman residual-time law,
//! * `tailbound` - the exponential tail bound for first burnout times on
//!   transitive graphs, with a torus percolation estimator for its inputs,
//! * `stats` - empirical distribution helpers shared by tests and binaries,
//! * `accept` - the runnable verification suite behind `burnout verify`.

pub mod accept;
pub mod bigreal;
pub mod constants;
pub mod error;
pub mod exact;
pub mod parallel;
pub mod quad;
pub mod rng;
pub mod sim;
pub mod special;
pub mod stats;
pub mod tailbound;

pub use error::{Error, Result};
pub use rng::RngHandle;
