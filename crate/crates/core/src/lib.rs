//! Exact homological algebra over graded quotients of polynomial rings over
//! prime fields: Gröbner bases, finitely presented modules, free resolutions,
//! Frobenius twists and Betti/Bass numbers over contracting endomorphisms.

pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod invariants;
pub mod modules;
pub mod polyring;

pub use error::{Error, Result};
