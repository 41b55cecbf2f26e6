//! Machine checks of the structural identities: commutators, divisor, string,
//! 2-Toda, Plücker relations, translation conjugation and dressing.

pub mod commutator;
pub mod dressing;
pub mod equations;
pub mod pluecker;
pub mod report;
pub mod xpoly;

pub use report::{CheckRow, Report};
