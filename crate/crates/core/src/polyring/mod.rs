//! Exact sparse multivariate polynomials over the rationals, graded by
//! complex degree, with the truncated-series operations the pushforward
//! pipeline needs.

mod monomial;
mod ops;
mod poly;
mod render;
mod table;

pub use monomial::Monomial;
pub use ops::{
    as_linear_difference, divide_by_difference, divide_exact_linear, grade, grade_decompose,
    pow_truncated, series_inverse, substitute, truncate, Substitution,
};
pub use poly::{poly_arith, rat, ArithOp, Polynomial, Rational};
pub use render::to_tex;
pub use table::{Var, Variable, VariableTable};

#[cfg(test)]
mod tests;
