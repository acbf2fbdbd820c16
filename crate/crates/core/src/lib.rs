//! Chern-Weil type cocycles `tr(Ωᵏ)` on algebras of pseudodifferential operators
//! over the circle, computed exactly at two levels: quasi-banded lattice
//! operators on Fourier modes, and formal classical symbols.

pub mod cocycles;
pub mod error;
pub mod harness;
pub mod lattice;
pub mod literal;
pub mod perm;
pub mod symbols;

pub use error::{Error, Result};
