//! Subsystem codes from classical cyclic codes.
//!
//! Layers, bottom up: finite fields ([`galois`]), defining sets
//! ([`cyclotomic`]), linear codes and exhaustive weights ([`lincode`],
//! [`enumerate`]), additive codes under the trace-symplectic form
//! ([`symplectic`]), the parameter engine ([`subsystem`]), code families
//! ([`constructions`]), propagation rules ([`propagation`]) and table
//! generation ([`registry`]).

pub mod arith;
pub mod constructions;
pub mod cyclotomic;
pub mod enumerate;
pub mod error;
pub mod galois;
pub mod lincode;
mod moduli;
pub mod propagation;
pub mod registry;
pub mod subsystem;
pub mod symplectic;

pub use error::{Error, Result};
