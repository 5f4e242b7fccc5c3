//! Dual symbolic/numeric engine for the peripheral Poisson boundary of the
//! weighted left-creation ucp map on operators over the truncated full Fock
//! space.
//!
//! The crate has three layers:
//!
//! * [`fock_core`] — words, weights, and the truncated basis indexing;
//! * [`word_algebra`] — the exact symbolic *-algebra with its normal-form
//!   rewrite system, symbolic ucp map, and symbolic Choi-Effros product;
//! * [`matrix_ops`] / [`ucp_dynamics`] / [`boundary`] — truncated operators
//!   with trust-depth bookkeeping, the numeric ucp dynamics, and the boundary
//!   experiments (commutant probe, conditional expectation, bimodule inner
//!   product).
//!
//! The [`cli`] module drives reproducible experiment runs; the `fockbound`
//! binary is a thin wrapper around it.

pub mod boundary;
pub mod cli;
pub mod error;
pub mod fock_core;
pub mod matrix_ops;
pub mod ucp_dynamics;
pub mod word_algebra;

pub use error::{Error, Result};
