//! Exact algebra over the rationals.
//!
//! Everything here is pure and immutable once built: rationals are
//! `num_rational::BigRational`, polynomials are sparse maps from exponent
//! vectors to coefficients, ordered by graded reverse lexicographic order.

pub mod groebner;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod snf;

pub use groebner::{groebner_basis, normal_form, standard_monomials};
pub use linalg::RatMatrix;
pub use parse::{parse_polynomial, ParseError};
pub use poly::{Monomial, Poly};
pub use rational::{fmt_rat, parse_rat, rat, rint, Rational};
pub use snf::{smith_normal_form, IntMatrix};
