//! Macroscopic games whose questions form non-distributive lattices and
//! whose strategies are real wavefunctions scored by the Born rule.

pub mod contextual;
pub mod equilibrium;
pub mod error;
pub mod games;
pub mod hilbert;
pub mod lattice;
pub mod playsim;

pub use error::{Error, Result};
