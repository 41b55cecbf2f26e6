//! The charged fermionic Fock space and the operators acting on it.

pub mod eval;
pub mod family;
pub mod ops;
pub mod state;
pub mod vector;

pub use eval::{apply_ops, matrix_element, vacuum_expectation};
pub use family::{AFamily, FamilyArg};
pub use ops::{ApplyCtx, Op};
pub use state::BasisState;
pub use vector::FockVector;

#[cfg(test)]
mod tests;
