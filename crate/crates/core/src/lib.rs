//! Numerical workbench for the glued channel family
//! `N(λ, p)(ρ) = (1 − λ) ρ ⊕ λ D̄_p(ρ)`, where `D̄_p` is the complement of a
//! qubit dephasing channel.
//!
//! The crate covers dense linear algebra and entropies ([`qmath`]), state and
//! channel representations ([`channels`]), coherent information, capacity
//! formulas and bounds ([`capacity`]), and the classical wiretap analogue
//! ([`wiretap`]). Every entropy is measured in bits.

pub mod capacity;
pub mod channels;
pub mod checks;
mod error;
pub mod export;
pub mod qmath;
pub mod rng;
pub mod wiretap;

pub use error::{Error, Result};

/// Version string recorded in exported metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
