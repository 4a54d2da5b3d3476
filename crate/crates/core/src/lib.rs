//! Simulator and exhaustive verifier for crash-tolerant gathering of
//! anonymous, oblivious robots on ring networks.

pub mod cli;
pub mod error;
pub mod lemmas;
pub mod ring;
pub mod sim;
pub mod suig;
pub mod symmetry;
pub mod verify;

pub use error::{Error, Result};
