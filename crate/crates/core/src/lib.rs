//! Exact symbolic computation for differential geometry over prime fields:
//! sparse Laurent polynomial arithmetic, differential forms with the Cartier
//! operator, restricted Lie algebras with the Jacobson correction terms,
//! curvature and p-curvature of trivial-bundle connections, classification
//! of the multiplicative and additive structure sets on model curves, and
//! exact evaluation of the associated counting formulas.

pub mod classify;
pub mod connection;
pub mod counting;
pub mod derham;
pub mod error;
pub mod ffpoly;
pub mod rlie;
pub mod selftest;

pub use error::{Error, Result};
