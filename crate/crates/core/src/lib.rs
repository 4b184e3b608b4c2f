//! Clifford multiplication on the torsion points of the Dirac spinor torus.

pub mod classification;
pub mod clifford_perm;
pub mod dense;
pub mod dynamics;
pub mod error;
pub mod generators;
pub mod monomial;
pub mod perm;
pub mod report;
pub mod torsion;
pub mod unit;

pub use error::{Error, Result};
