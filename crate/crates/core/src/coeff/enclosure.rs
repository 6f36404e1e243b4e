//! Interval evaluation of the b-recurrence for indices where the exact
//! π-polynomials become too large to store.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::exact::{enclose_constant, Constant, Interval};

/// Enclosures of `β_n = b_n e^{−π/2}` and of the convolution
/// `S_n = Σ_k W_k²/(k+1) · β_{n−k}` for `0 ≤ n ≤ n_max`, at a fixed
/// working precision.
#[derive(Clone, Debug)]
pub struct RecurrenceEnclosure {
    precision: u32,
    beta: Vec<Interval>,
    conv: Vec<Interval>,
}

impl RecurrenceEnclosure {
    /// `scaled_weights[k]` must hold the integer `16^k W_k²/(k+1)` for
    /// `k ≤ n_max`.
    pub(crate) fn compute(n_max: usize, precision: u32, scaled_weights: &[BigInt]) -> Result<Self> {
        let q = precision;
        let pi_8 = enclose_constant(Constant::Pi, q)?.mul_pow2(-3);
        let weights: Vec<Interval> = (0..=n_max)
            .map(|k| Interval::from_ratio(&scaled_weights[k], &(BigInt::one() << (4 * k)), q))
            .collect::<Result<_>>()?;
        let mut beta = Vec::with_capacity(n_max + 1);
        let mut conv = Vec::with_capacity(n_max + 1);
        beta.push(Interval::one(q));
        for n in 0..=n_max {
            let mut s = Interval::zero(q);
            for k in 0..=n {
                s = &s + &(&weights[k] * &beta[n - k]);
            }
            if n < n_max {
                // b_{n+1} = n/(n+1) b_n + π/(8(n+1)) S_n
                let next = (&beta[n].mul_int(&BigInt::from(n)) + &(&pi_8 * &s)).div_uint(n as u64 + 1);
                beta.push(next);
            }
            conv.push(s);
        }
        Ok(RecurrenceEnclosure {
            precision,
            beta,
            conv,
        })
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn n_max(&self) -> usize {
        self.beta.len() - 1
    }

    /// Enclosure of `b_n e^{−π/2}`.
    pub fn beta(&self, n: usize) -> &Interval {
        &self.beta[n]
    }

    /// Enclosure of `Σ_k W_k²/(k+1) b_{n−k} e^{−π/2}`.
    pub fn convolution(&self, n: usize) -> &Interval {
        &self.conv[n]
    }

    /// Enclosure of `((n+1)b_{n+1} − (n+1/2)b_n) e^{−π/2} = π/8 S_n − β_n/2`.
    pub fn step_difference(&self, n: usize) -> Result<Interval> {
        let pi_8 = enclose_constant(Constant::Pi, self.precision)?.mul_pow2(-3);
        Ok(&(&pi_8 * &self.conv[n]) - &self.beta[n].mul_pow2(-1))
    }
}
