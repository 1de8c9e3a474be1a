//! Quantum Schubert calculus of Grassmannians, F-vertices of the multiplicative
//! eigenvalue polytope, and unitary rigid local systems via strange duality.

pub mod alcove;
pub mod classical;
pub mod divisors;
pub mod error;
pub mod fusion;
pub mod induction;
pub mod kz;
pub mod par;
pub mod partitions;
pub mod polytope;
pub mod qschubert;
pub mod strangedual;

pub use error::{Error, Result};

/// Exact rational numbers used for alcove coordinates and exponents.
pub type Rational = num_rational::Rational64;
