//! Exact fusion-ring combinatorics: based rings, Frobenius–Perron dimensions,
//! gradings, pre-metric groups, premodular data, and the classification of
//! braided generalized near-group fusion rules with irrational global dimension.

pub mod ring;
pub mod scalars;
pub mod premetric;
pub mod premodular;
pub mod classify;
pub mod cli;
