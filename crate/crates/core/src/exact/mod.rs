//! Exact rationals, π-polynomials, outward-rounded intervals and certified
//! constants.

mod constants;
mod interval;
mod parse;
mod pi_expr;

pub use constants::{enclose_constant, enclose_constant_named, Constant};
pub use interval::{interval_fn, interval_fn_with_budget, Interval, IntervalOp, Sign, DEFAULT_BIT_BUDGET};
pub use num_rational::BigRational;
pub use parse::{parse_decimal, parse_exact, parse_exact_with, parse_rational};
pub use pi_expr::{eval_pi_expression, eval_pi_expression_with_budget, ExactValue, PiExpression};
