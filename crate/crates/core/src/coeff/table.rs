use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::enclosure::RecurrenceEnclosure;
use super::wallis::scaled_weight;
use crate::error::Result;
use crate::exact::{enclose_constant, Constant, ExactValue, Interval, PiExpression};

/// Default largest index for which exact `b_n` are used by the bulk
/// queries (`ratio`, `c_coeff`, certification); beyond it the interval
/// recurrence takes over.
pub const DEFAULT_EXACT_LIMIT: usize = 160;

/// The multiplier `p` in `c_n(p) = b_n − p W_n`.
#[derive(Clone, Debug, PartialEq)]
pub enum PValue {
    Exact(ExactValue),
    Enclosed(Interval),
}

impl PValue {
    pub fn enclose(&self, precision: u32) -> Result<Interval> {
        match self {
            PValue::Exact(v) => v.evaluate(precision),
            PValue::Enclosed(i) => Ok(i.clone()),
        }
    }
}

impl From<ExactValue> for PValue {
    fn from(v: ExactValue) -> Self {
        PValue::Exact(v)
    }
}

impl From<Interval> for PValue {
    fn from(v: Interval) -> Self {
        PValue::Enclosed(v)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableStats {
    pub wallis_len: usize,
    pub exact_b_len: usize,
    pub u_len: usize,
    /// Largest numerator/denominator bit length among the exact `b_n`.
    pub max_b_coeff_bits: u64,
    /// `(precision, n_max)` of every cached interval recurrence.
    pub enclosures: Vec<(u32, usize)>,
}

/// Memoized prefix of `W_n`, `b_n`, `u_n`, `v_n`.
///
/// Exact `b_n` are stored as `a_n(π) e^{π/2} / (16^n n!)` with integer
/// polynomials `a_n`, which satisfy
/// `a_{n+1} = 16n a_n + 2π Σ_k t_k (n)_k a_{n−k}`, where
/// `t_k = 16^k W_k²/(k+1)` and `(n)_k` is the falling factorial.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    w: Vec<BigRational>,
    cb: Vec<BigInt>,
    t: Vec<BigInt>,
    a: Vec<Vec<BigInt>>,
    b: Vec<PiExpression>,
    u: Vec<PiExpression>,
    v: Vec<PiExpression>,
    enclosures: BTreeMap<u32, RecurrenceEnclosure>,
    exact_limit: usize,
}

impl Default for CoefficientTable {
    fn default() -> Self {
        CoefficientTable::new()
    }
}

impl CoefficientTable {
    pub fn new() -> Self {
        CoefficientTable {
            w: vec![BigRational::one()],
            cb: vec![BigInt::one()],
            t: vec![BigInt::one()],
            a: vec![vec![BigInt::one()]],
            b: vec![PiExpression::exp_half_pi()],
            u: Vec::new(),
            v: Vec::new(),
            enclosures: BTreeMap::new(),
            exact_limit: DEFAULT_EXACT_LIMIT,
        }
    }

    pub fn with_exact_limit(exact_limit: usize) -> Self {
        CoefficientTable {
            exact_limit,
            ..CoefficientTable::new()
        }
    }

    pub fn exact_limit(&self) -> usize {
        self.exact_limit
    }

    pub fn set_exact_limit(&mut self, n: usize) {
        self.exact_limit = n;
    }

    /// Largest `n` whose exact `b_n` is already stored.
    pub fn exact_len(&self) -> usize {
        self.b.len() - 1
    }

    fn uses_exact(&self, n: usize) -> bool {
        n <= self.exact_limit || n <= self.exact_len()
    }

    pub fn ensure_wallis(&mut self, n: usize) {
        while self.w.len() <= n {
            let k = self.w.len() - 1;
            // W_{k+1} = (k + 1/2)/(k + 1) W_k
            let next = &self.w[k] * BigRational::new(BigInt::from(2 * k + 1), BigInt::from(2 * k + 2));
            self.w.push(next);
            // C(2k+2, k+1) = C(2k, k)·2(2k+1)/(k+1)
            let cb = &self.cb[k] * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 1);
            self.t.push(scaled_weight(&cb, k + 1));
            self.cb.push(cb);
        }
    }

    pub fn wallis(&mut self, n: usize) -> &BigRational {
        self.ensure_wallis(n);
        &self.w[n]
    }

    pub fn wallis_slice(&self) -> &[BigRational] {
        &self.w
    }

    fn extend_b(&mut self) {
        let n = self.a.len() - 1;
        self.ensure_wallis(n);
        let mut factors = Vec::with_capacity(n + 1);
        let mut falling = BigInt::one();
        for k in 0..=n {
            if k > 0 {
                falling *= BigInt::from(n - k + 1);
            }
            factors.push(&self.t[k] * &falling * 2u32);
        }
        let sixteen_n = BigInt::from(16 * n);
        let a = &self.a;
        let next: Vec<BigInt> = (0..=n + 1)
            .into_par_iter()
            .map(|j| {
                let mut acc = BigInt::zero();
                if j <= n {
                    acc += &a[n][j] * &sixteen_n;
                }
                if j >= 1 {
                    let i = j - 1;
                    for (k, f) in factors.iter().enumerate() {
                        if let Some(c) = a[n - k].get(i) {
                            acc += f * c;
                        }
                    }
                }
                acc
            })
            .collect();
        let m = n + 1;
        let den = (BigInt::one() << (4 * m)) * factorial(m);
        let coeffs = next
            .iter()
            .map(|c| BigRational::new(c.clone(), den.clone()))
            .collect();
        self.a.push(next);
        self.b.push(PiExpression::new(coeffs, true));
    }

    /// Exact `b_n`, extending the table as needed.
    pub fn b(&mut self, n: usize) -> &PiExpression {
        while self.b.len() <= n {
            self.extend_b();
        }
        &self.b[n]
    }

    /// Exact `u_n = π Σ_k w_k w_{n−k} − 6(2n+1)/((n+2)(n+1)) W_n²`, with
    /// `w_k = W_k²/(k+1)`.
    pub fn u(&mut self, n: usize) -> &PiExpression {
        self.ensure_wallis(n);
        while self.u.len() <= n {
            let m = self.u.len();
            let conv: BigInt = (0..=m).map(|k| &self.t[k] * &self.t[m - k]).sum();
            let scale = BigInt::one() << (4 * m);
            let c1 = BigRational::new(conv, scale.clone());
            let c0 = -BigRational::new(
                BigInt::from(6 * (2 * m + 1)) * &self.cb[m] * &self.cb[m],
                BigInt::from((m + 2) * (m + 1)) * scale,
            );
            let u = PiExpression::new(vec![c0, c1], false);
            let v = match self.v.last() {
                Some(prev) => prev.checked_add(&u).expect("same scale"),
                None => u.clone(),
            };
            self.u.push(u);
            self.v.push(v);
        }
        &self.u[n]
    }

    /// Exact `v_n = Σ_{k≤n} u_k`.
    pub fn v(&mut self, n: usize) -> &PiExpression {
        self.u(n);
        &self.v[n]
    }

    /// Exact `b_k / W_k`.
    pub fn ratio_exact(&mut self, k: usize) -> PiExpression {
        let w = self.wallis(k).clone();
        self.b(k).scale(&w.recip())
    }

    /// Exact `(n+1) b_{n+1} − (n+1/2) b_n`.
    pub fn step_difference_exact(&mut self, n: usize) -> PiExpression {
        let next = self.b(n + 1).scale(&BigRational::from_integer(BigInt::from(n + 1)));
        let cur = self.b(n).scale(&BigRational::new(BigInt::from(2 * n + 1), BigInt::from(2)));
        next.checked_sub(&cur).expect("same scale")
    }

    /// Exact `c_n(p) = b_n − p W_n`.
    pub fn c_exact(&mut self, n: usize, p: &ExactValue) -> ExactValue {
        let w = self.wallis(n).clone();
        let b = ExactValue::from(self.b(n).clone());
        b.sub(&p.scale(&w))
    }

    fn enclosure_precision(precision: u32, n: usize) -> u32 {
        let log_n = usize::BITS - n.leading_zeros();
        precision + 24 + 2 * log_n
    }

    /// Interval recurrence covering `0..=n_max` for output precision `precision`.
    pub fn enclosure(&mut self, n_max: usize, precision: u32) -> Result<&RecurrenceEnclosure> {
        let have = self
            .enclosures
            .get(&precision)
            .map(|e| e.n_max() >= n_max)
            .unwrap_or(false);
        if !have {
            let n = n_max.max(64).next_power_of_two().max(n_max);
            self.ensure_wallis(n);
            let q = Self::enclosure_precision(precision, n);
            let enc = RecurrenceEnclosure::compute(n, q, &self.t)?;
            self.enclosures.insert(precision, enc);
        }
        Ok(&self.enclosures[&precision])
    }

    /// Pre-build everything the bulk queries up to `n_max` need.
    pub fn prepare(&mut self, n_max: usize, precision: u32) -> Result<()> {
        self.ensure_wallis(n_max + 1);
        let exact_top = (n_max + 1).min(self.exact_limit);
        self.b(exact_top);
        if n_max + 1 > exact_top {
            self.enclosure(n_max + 1, precision)?;
        }
        Ok(())
    }

    /// Enclosure of `b_n e^{−π/2}`.
    fn beta_enclosure(&mut self, n: usize, precision: u32) -> Result<Interval> {
        Ok(self.enclosure(n, precision)?.beta(n).clone())
    }

    /// Enclosure of `b_n`.
    pub fn b_enclosure(&mut self, n: usize, precision: u32) -> Result<Interval> {
        if self.uses_exact(n) {
            return self.b(n).evaluate(precision);
        }
        let beta = self.beta_enclosure(n, precision)?;
        let e = enclose_constant(Constant::ExpHalfPi, beta.precision())?;
        Ok((&beta * &e).round_to(precision))
    }

    /// Enclosure of `b_n / W_n`.
    pub fn ratio(&mut self, n: usize, precision: u32) -> Result<Interval> {
        if self.uses_exact(n) {
            return self.ratio_exact(n).evaluate(precision);
        }
        let b = self.b_enclosure(n, precision + 8)?;
        let w = self.wallis(n).clone();
        Ok(b.mul_rational(&w.recip()).round_to(precision))
    }

    /// Enclosure of `(n+1) b_{n+1} − (n+1/2) b_n`.
    pub fn step_difference(&mut self, n: usize, precision: u32) -> Result<Interval> {
        if self.uses_exact(n + 1) {
            return self.step_difference_exact(n).evaluate(precision);
        }
        let d = self.enclosure(n + 1, precision)?.step_difference(n)?;
        let e = enclose_constant(Constant::ExpHalfPi, d.precision())?;
        Ok((&d * &e).round_to(precision))
    }

    /// Enclosure of `c_n(p) = b_n − p W_n`. For exact `p` and indices within
    /// the exact range the difference is formed exactly before enclosing.
    pub fn c_coeff(&mut self, n: usize, p: &PValue, precision: u32) -> Result<Interval> {
        if let PValue::Exact(p) = p {
            if self.uses_exact(n) {
                return self.c_exact(n, p).evaluate(precision);
            }
        }
        let b = self.b_enclosure(n, precision + 8)?;
        let pw = p.enclose(precision + 8)?.mul_rational(self.wallis(n));
        Ok((&b - &pw).round_to(precision))
    }

    /// Immutable lookups for use after [`CoefficientTable::prepare`].
    pub fn get_b(&self, n: usize) -> Option<&PiExpression> {
        self.b.get(n)
    }

    pub fn get_wallis(&self, n: usize) -> Option<&BigRational> {
        self.w.get(n)
    }

    pub fn stats(&self) -> TableStats {
        TableStats {
            wallis_len: self.w.len(),
            exact_b_len: self.b.len(),
            u_len: self.u.len(),
            max_b_coeff_bits: self.b.iter().map(|b| b.max_coeff_bits()).max().unwrap_or(0),
            enclosures: self
                .enclosures
                .iter()
                .map(|(p, e)| (*p, e.n_max()))
                .collect(),
        }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Sign;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn closed_forms() {
        let mut t = CoefficientTable::new();
        assert_eq!(t.b(0), &PiExpression::exp_half_pi());
        assert_eq!(t.b(1), &PiExpression::new(vec![q(0, 1), q(1, 8)], true));
        assert_eq!(
            t.b(2),
            &PiExpression::new(vec![q(0, 1), q(9, 128), q(1, 128)], true)
        );
        assert_eq!(
            t.b(3),
            &PiExpression::new(vec![q(0, 1), q(150, 3072), q(27, 3072), q(1, 3072)], true)
        );
        assert_eq!(t.b(20).degree(), 20);
    }

    #[test]
    fn u_and_v_first_values() {
        let mut t = CoefficientTable::new();
        assert_eq!(t.u(0), &PiExpression::new(vec![q(-3, 1), q(1, 1)], false));
        assert_eq!(t.u(1), &PiExpression::new(vec![q(-3, 4), q(1, 4)], false));
        assert_eq!(t.v(1), &PiExpression::new(vec![q(-15, 4), q(5, 4)], false));
    }

    #[test]
    fn enclosure_matches_exact() {
        let mut t = CoefficientTable::with_exact_limit(0);
        let mut exact = CoefficientTable::new();
        for n in [1usize, 5, 30, 60] {
            let a = t.b_enclosure(n, 96).unwrap();
            let b = exact.b(n).evaluate(96).unwrap();
            assert!(a.overlaps(&b), "n = {n}: {a} vs {b}");
            let d = t.step_difference(n, 96).unwrap();
            assert_eq!(d.sign(), Sign::Positive);
        }
    }

    #[test]
    fn c_at_threshold_is_exact_zero() {
        let mut t = CoefficientTable::new();
        let p = ExactValue::from(t.ratio_exact(1));
        assert!(t.c_exact(1, &p).is_zero());
        assert!(!t.c_exact(2, &p).is_zero());
    }
}
