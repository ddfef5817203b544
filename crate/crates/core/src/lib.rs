//! Truncated Fock-space simulation of heralded non-Gaussian state generation with an
//! optical parametric amplifier: state preparation, heralding, phase-space diagnostics,
//! loss dynamics, metrology and parameter optimization.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fock;
pub mod herald;
pub mod states;

pub use error::{Error, Result};
pub use fock::{C64, FockKet, FockOperator, HilbertSpec, TwoModeKet};
pub mod density;
pub mod dynamics;
pub mod metrics;
pub mod optimize;
pub mod phase_space;
pub mod probability;
pub mod reproduce;
