//! Exact coefficient sequences: Wallis ratios `W_n`, the coefficients `b_n`
//! of `exp(K(√x))`, `c_n(p) = b_n − p W_n`, and the auxiliary `u_n`, `v_n`.

mod enclosure;
mod table;
mod wallis;

pub use enclosure::RecurrenceEnclosure;
pub use table::{CoefficientTable, PValue, TableStats, DEFAULT_EXACT_LIMIT};
pub use wallis::{central_binomial, wallis};

use crate::error::Result;
use crate::exact::{Interval, PiExpression};

pub fn b_coeff(n: usize, table: &mut CoefficientTable) -> PiExpression {
    table.b(n).clone()
}

pub fn c_coeff(n: usize, p: &PValue, precision: u32) -> Result<Interval> {
    CoefficientTable::new().c_coeff(n, p, precision)
}

/// Enclosure of `b_n / W_n`.
pub fn ratio(n: usize, precision: u32) -> Result<Interval> {
    CoefficientTable::new().ratio(n, precision)
}

pub fn u_coeff(n: usize) -> PiExpression {
    CoefficientTable::new().u(n).clone()
}

pub fn v_coeff(n: usize) -> PiExpression {
    CoefficientTable::new().v(n).clone()
}
