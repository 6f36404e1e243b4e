//! Exact values of the form `q(π)` or `q(π)·e^{π/2}` with rational `q`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::constants::{enclose_constant, Constant};
use super::interval::{Interval, DEFAULT_BIT_BUDGET};
use crate::error::{Error, Result};

/// Polynomial in π with rational coefficients, optionally multiplied by `e^{π/2}`.
///
/// `coeffs[i]` is the coefficient of `π^i`; trailing zeros are always trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiExpression {
    coeffs: Vec<BigRational>,
    exp_scale: bool,
}

impl PiExpression {
    pub fn new(mut coeffs: Vec<BigRational>, exp_scale: bool) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PiExpression { coeffs, exp_scale }
    }

    pub fn zero(exp_scale: bool) -> Self {
        PiExpression { coeffs: Vec::new(), exp_scale }
    }

    pub fn constant(q: BigRational, exp_scale: bool) -> Self {
        PiExpression::new(vec![q], exp_scale)
    }

    pub fn from_integer(n: i64) -> Self {
        PiExpression::constant(BigRational::from_integer(BigInt::from(n)), false)
    }

    /// `π`
    pub fn pi() -> Self {
        PiExpression::new(vec![BigRational::zero(), BigRational::one()], false)
    }

    /// `e^{π/2}`
    pub fn exp_half_pi() -> Self {
        PiExpression::constant(BigRational::one(), true)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn exp_scale(&self) -> bool {
        self.exp_scale
    }

    /// `len(coeffs) - 1`, and 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The rational value when the expression does not depend on π or e^{π/2}.
    pub fn as_rational(&self) -> Option<BigRational> {
        match (self.exp_scale, self.coeffs.len()) {
            (_, 0) => Some(BigRational::zero()),
            (false, 1) => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &PiExpression) -> Result<PiExpression> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(PiExpression::new(other.coeffs.clone(), self.exp_scale));
        }
        if self.exp_scale != other.exp_scale {
            return Err(Error::MixedScale);
        }
        let mut out = self.clone();
        out.add_scaled_assign(other, &BigRational::one());
        Ok(out)
    }

    pub fn checked_sub(&self, other: &PiExpression) -> Result<PiExpression> {
        self.checked_add(&other.neg())
    }

    /// `self += q * other`; both sides must share the same scale.
    pub(crate) fn add_scaled_assign(&mut self, other: &PiExpression, q: &BigRational) {
        debug_assert!(other.is_zero() || self.is_zero() || self.exp_scale == other.exp_scale);
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigRational::zero());
        }
        for (c, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *c += o * q;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn scale(&self, q: &BigRational) -> PiExpression {
        if q.is_zero() {
            return PiExpression::zero(self.exp_scale);
        }
        PiExpression {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
            exp_scale: self.exp_scale,
        }
    }

    pub fn mul_pi(&self) -> PiExpression {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        PiExpression { coeffs, exp_scale: self.exp_scale }
    }

    /// Polynomial product; fails if both factors carry `e^{π/2}`.
    pub fn checked_mul(&self, other: &PiExpression) -> Result<PiExpression> {
        if self.exp_scale && other.exp_scale && !self.is_zero() && !other.is_zero() {
            return Err(Error::Unsupported(
                "product of two e^(pi/2)-scaled expressions".into(),
            ));
        }
        let scale = self.exp_scale || other.exp_scale;
        if self.is_zero() || other.is_zero() {
            return Ok(PiExpression::zero(scale));
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(PiExpression::new(coeffs, scale))
    }

    pub fn neg(&self) -> PiExpression {
        PiExpression {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            exp_scale: self.exp_scale,
        }
    }

    pub fn with_scale(mut self, exp_scale: bool) -> PiExpression {
        self.exp_scale = exp_scale;
        self
    }

    /// Largest numerator or denominator bit length among the coefficients.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    /// Enclosure of the value on the grid `2^-precision`.
    ///
    /// Non-rational values are snapped to the canonical one-ulp cell
    /// `[⌊v·2^P⌋, ⌊v·2^P⌋ + 1]`, so enclosures at increasing precision nest.
    pub fn evaluate(&self, precision: u32) -> Result<Interval> {
        eval_pi_expression(self, precision)
    }

    /// Horner evaluation at a working precision, without snapping.
    pub(crate) fn horner(&self, work: u32) -> Result<Interval> {
        let deg = self.degree() as u32;
        // π^d amplifies absolute rounding error by ~1.66·d bits
        let q = work + deg * 5 / 3 + 16;
        let pi = enclose_constant(Constant::Pi, q)?;
        let mut acc = Interval::zero(q);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &pi) + &Interval::from_rational(c, q);
        }
        if self.exp_scale {
            let e = enclose_constant(Constant::ExpHalfPi, q)?;
            acc = &acc * &e;
        }
        Ok(acc.round_to(work))
    }
}

/// Enclose an exact π-expression at `precision` bits.
pub fn eval_pi_expression(expr: &PiExpression, precision: u32) -> Result<Interval> {
    eval_pi_expression_with_budget(expr, precision, DEFAULT_BIT_BUDGET)
}

pub fn eval_pi_expression_with_budget(
    expr: &PiExpression,
    precision: u32,
    budget: u64,
) -> Result<Interval> {
    if let Some(q) = expr.as_rational() {
        let out = Interval::from_rational(&q, precision);
        out.check_budget(budget)?;
        return Ok(out);
    }
    let mut guard = 32u32;
    loop {
        let raw = expr.horner(precision + guard)?;
        raw.check_budget(budget + guard as u64)?;
        let snapped = raw.round_to(precision);
        if snapped.width_ulps() <= BigInt::one() || guard >= 8192 {
            snapped.check_budget(budget)?;
            return Ok(snapped);
        }
        guard *= 2;
    }
}

impl fmt::Display for PiExpression {
    /// Factored form, e.g. `pi*(pi + 9)/128*exp_half_pi`. The output is
    /// accepted by [`crate::exact::parse_exact`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // common denominator and content
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let mut poly: Vec<BigInt> = ints[low..].iter().map(|c| c / &g).collect();
        let mut content = BigRational::new(g, den);
        if poly.last().is_some_and(|c| c.is_negative()) {
            poly.iter_mut().for_each(|c| *c = -c.clone());
            content = -content;
        }

        let mut parts: Vec<String> = Vec::new();
        let num = content.numer();
        let single = poly.len() == 1;
        let mut s = String::new();
        if num.is_negative() {
            s.push('-');
        }
        let abs_num = num.abs();
        let pi_pow = match low {
            0 => None,
            1 => Some("pi".to_string()),
            k => Some(format!("pi^{k}")),
        };
        if !abs_num.is_one() || (pi_pow.is_none() && single) {
            parts.push(abs_num.to_string());
        }
        if let Some(p) = pi_pow {
            parts.push(p);
        }
        if !single {
            let mut terms = String::new();
            for (i, c) in poly.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let first = terms.is_empty();
                if c.is_negative() {
                    terms.push_str(if first { "-" } else { " - " });
                } else if !first {
                    terms.push_str(" + ");
                }
                let a = c.abs();
                let mono = match i {
                    0 => String::new(),
                    1 => "pi".to_string(),
                    k => format!("pi^{k}"),
                };
                if mono.is_empty() {
                    terms.push_str(&a.to_string());
                } else if a.is_one() {
                    terms.push_str(&mono);
                } else {
                    terms.push_str(&format!("{a}*{mono}"));
                }
            }
            if parts.is_empty() && content.denom().is_one() && !self.exp_scale {
                parts.push(terms);
            } else {
                parts.push(format!("({terms})"));
            }
        }
        let body = parts.join("*");
        let bare_one = body == "1" && content.denom().is_one();
        if !(bare_one && self.exp_scale) {
            s.push_str(&body);
        }
        if !content.denom().is_one() {
            s.push_str(&format!("/{}", content.denom()));
        }
        if self.exp_scale {
            s.push_str(if bare_one { "exp_half_pi" } else { "*exp_half_pi" });
        }
        write!(f, "{s}")
    }
}

/// `plain(π) + scaled(π)·e^{π/2}`: closed under addition and rational scaling.
///
/// Since π and e^{π/2} are algebraically independent, the value is zero
/// exactly when both parts are the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactValue {
    plain: PiExpression,
    scaled: PiExpression,
}

impl ExactValue {
    pub fn new(plain: PiExpression, scaled: PiExpression) -> Self {
        ExactValue {
            plain: plain.with_scale(false),
            scaled: scaled.with_scale(true),
        }
    }

    pub fn zero() -> Self {
        ExactValue::new(PiExpression::zero(false), PiExpression::zero(true))
    }

    pub fn rational(q: BigRational) -> Self {
        ExactValue::from(PiExpression::constant(q, false))
    }

    pub fn from_integer(n: i64) -> Self {
        ExactValue::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn plain(&self) -> &PiExpression {
        &self.plain
    }

    pub fn scaled(&self) -> &PiExpression {
        &self.scaled
    }

    pub fn is_zero(&self) -> bool {
        self.plain.is_zero() && self.scaled.is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.scaled.is_zero() {
            self.plain.as_rational()
        } else {
            None
        }
    }

    /// The single-scale expression, when one part vanishes.
    pub fn as_pi_expression(&self) -> Option<PiExpression> {
        if self.scaled.is_zero() {
            Some(self.plain.clone())
        } else if self.plain.is_zero() {
            Some(self.scaled.clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &ExactValue) -> ExactValue {
        let mut plain = self.plain.clone();
        plain.add_scaled_assign(&other.plain, &BigRational::one());
        let mut scaled = self.scaled.clone();
        scaled.add_scaled_assign(&other.scaled, &BigRational::one());
        ExactValue::new(plain, scaled)
    }

    pub fn sub(&self, other: &ExactValue) -> ExactValue {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExactValue {
        ExactValue::new(self.plain.neg(), self.scaled.neg())
    }

    pub fn scale(&self, q: &BigRational) -> ExactValue {
        ExactValue::new(self.plain.scale(q), self.scaled.scale(q))
    }

    pub fn mul_pi(&self) -> ExactValue {
        ExactValue::new(self.plain.mul_pi(), self.scaled.mul_pi())
    }

    pub fn checked_mul(&self, other: &ExactValue) -> Result<ExactValue> {
        let plain = self.plain.checked_mul(&other.plain)?;
        let cross = self
            .plain
            .checked_mul(&other.scaled)?
            .checked_add(&self.scaled.checked_mul(&other.plain)?)?;
        let ss = self.scaled.checked_mul(&other.scaled)?;
        if !ss.is_zero() {
            return Err(Error::Unsupported(
                "product of two e^(pi/2)-scaled expressions".into(),
            ));
        }
        Ok(ExactValue::new(plain, cross))
    }

    pub fn evaluate(&self, precision: u32) -> Result<Interval> {
        match (self.plain.is_zero(), self.scaled.is_zero()) {
            (_, true) => eval_pi_expression(&self.plain, precision),
            (true, false) => eval_pi_expression(&self.scaled, precision),
            (false, false) => {
                let w = precision + 8;
                let s = &self.plain.horner(w)? + &self.scaled.horner(w)?;
                Ok(s.round_to(precision))
            }
        }
    }
}

impl From<PiExpression> for ExactValue {
    fn from(e: PiExpression) -> Self {
        if e.exp_scale() {
            ExactValue::new(PiExpression::zero(false), e)
        } else {
            ExactValue::new(e, PiExpression::zero(true))
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.plain.is_zero(), self.scaled.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.plain),
            (true, false) => write!(f, "{}", self.scaled),
            (false, false) => write!(f, "{} + ({})", self.scaled, self.plain),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let e = PiExpression::new(vec![q(1, 2), q(0, 1), q(0, 1)], false);
        assert_eq!(e.degree(), 0);
        assert_eq!(e.coeffs().len(), 1);
    }

    #[test]
    fn mixed_scale_addition_is_rejected() {
        let a = PiExpression::pi();
        let b = PiExpression::exp_half_pi();
        assert_eq!(a.checked_add(&b), Err(Error::MixedScale));
        assert!(a.mul_pi().checked_add(&a).is_ok());
    }

    #[test]
    fn display_factored_forms() {
        let b2 = PiExpression::new(vec![q(0, 1), q(9, 128), q(1, 128)], true);
        assert_eq!(b2.to_string(), "pi*(pi + 9)/128*exp_half_pi");
        let b1 = PiExpression::new(vec![q(0, 1), q(1, 8)], true);
        assert_eq!(b1.to_string(), "pi/8*exp_half_pi");
        let u0 = PiExpression::new(vec![q(-3, 1), q(1, 1)], false);
        assert_eq!(u0.to_string(), "pi - 3");
        let u1 = PiExpression::new(vec![q(-3, 4), q(1, 4)], false);
        assert_eq!(u1.to_string(), "(pi - 3)/4");
        assert_eq!(PiExpression::exp_half_pi().to_string(), "exp_half_pi");
        assert_eq!(PiExpression::from_integer(-4).to_string(), "-4");
        assert_eq!(PiExpression::zero(true).to_string(), "0");
        let neg = PiExpression::new(vec![q(0, 1), q(0, 1), q(-2, 3)], false);
        assert_eq!(neg.to_string(), "-2*pi^2/3");
    }

    #[test]
    fn zero_evaluates_to_point_zero() {
        let z = PiExpression::zero(true).evaluate(80).unwrap();
        assert_eq!(z, Interval::zero(80));
    }

    #[test]
    fn exact_value_zero_test() {
        let a = ExactValue::from(PiExpression::exp_half_pi());
        assert!(a.sub(&a).is_zero());
        assert!(!a.sub(&ExactValue::from_integer(4)).is_zero());
    }
}
