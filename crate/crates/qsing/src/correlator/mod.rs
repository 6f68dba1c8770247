//! Genus-zero primary correlators.

mod algebra;
mod amodel;
mod wdvv;

pub use algebra::{factorial, CorrelatorTable, Entry, FrobeniusAlgebra, MonomialPresentation, PotentialSeries, Provenance};
pub use amodel::{
    evaluate_frame, four_point_ogrr, frobenius_algebra, multilinear, solve_ramond_three_point, three_point,
    witten_degree_lookup, Gauge,
};
pub use wdvv::{genus_zero_potential, Wdvv};
