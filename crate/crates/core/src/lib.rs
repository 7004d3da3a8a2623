//! Exact and numeric verification of identity families for multiple harmonic
//! sums and multiple zeta (star) values.

pub mod exact;
pub mod families;
pub mod index;
pub mod numeric;
pub mod report;
pub mod stuffle;

pub use index::{FormalSum, IndexError, SignedIndex};
