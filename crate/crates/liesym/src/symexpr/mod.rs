//! Exact symbolic expressions over rationals and the parameters `a, b, d, e`.

pub mod atom;
pub mod compiled;
pub mod expr;
pub mod param;
pub mod parse;
pub mod print;

pub use atom::{Atom, Coord, Deriv, Func, MultiIndex, Var};
pub use compiled::Compiled;
pub use expr::{Expr, Mono, NumEnv};
pub use param::{fmt_q, q, q_sqrt, q_to_f64, qi, Lin, Param, ParamPoly, ParamSubst};
pub use parse::parse;

/// Exact rational scalar.
pub type Q = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("not representable: {0}")]
    NonRepresentable(String),
    #[error("missing binding for {0}")]
    MissingBinding(String),
    #[error("domain error: {0}")]
    Domain(String),
}
