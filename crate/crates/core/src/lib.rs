//! Temperley-Lieb projector representations and the entanglement they
//! generate.
//!
//! The crate builds rank-one projector generators U = d |Ψ⟩⟨Ψ| of the
//! Temperley-Lieb algebra on two n-level sites, Yang-Baxterizes them into
//! unitary braid operators, and follows those braids into a two-qubit spin
//! model: conjugated Hamiltonians, thermal states with analytic concurrence
//! and critical temperature, and unitary dynamics with entanglement sudden
//! death. Every analytic formula ships next to an independent numerical
//! path and the two are cross-checked in the test suite.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod spin_model;
pub mod thermal;
pub mod tl;
pub mod yang_baxter;

pub use error::{Error, Result};
pub use linalg::{C64, CMatrix};

/// Default residual tolerance for exact algebraic identities checked in
/// floating point.
pub const DEFAULT_TOL: f64 = 1e-10;
