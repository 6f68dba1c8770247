//! Genus-zero FJRW-type invariants of simple quasi-homogeneous singularities,
//! Saito Frobenius manifolds of their mirrors, and the comparison between them.
//! All arithmetic is exact over the rationals.

pub mod cases;
pub mod correlator;
pub mod error;
pub mod milnor;
pub mod mirror;
pub mod moduli;
pub mod singular;
pub mod saito;
pub mod statespace;

pub use error::{QsingError, Result};
