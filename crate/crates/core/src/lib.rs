//! Exact infinite-wedge computations of equivariant Gromov–Witten invariants of P¹,
//! Hodge integrals and Hurwitz numbers, with machine checks of their structural identities.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod fock;
pub mod gw;
pub mod hodge;
pub mod partitions;
pub mod verify;

pub use error::{Error, Result};
