//! Lie point symmetries of a two-factor backward Kolmogorov equation.

pub mod determining;
pub mod flows;
pub mod generators;
pub mod jet;
pub mod liealg;
pub mod symexpr;
