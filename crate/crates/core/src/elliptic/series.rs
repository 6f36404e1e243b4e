//! The four hypergeometric series `F(a, b; c; x)` used throughout, summed
//! with rigorous tail bounds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::agm::check_unit;
use crate::error::{domain, Error, Result};
use crate::exact::{enclose_constant, Constant, Interval};

/// Default cap on the number of summed terms.
pub const DEFAULT_MAX_TERMS: usize = 1 << 20;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HypKind {
    /// `F(1/2, 1/2; 1; x) = Σ W_n² xⁿ`
    FHalfHalf1,
    /// `F(1/2, 1/2; 2; x) = Σ W_n²/(n+1) xⁿ`
    FHalfHalf2,
    /// `F(3/2, 3/2; 2; x) = Σ 4(n+1) W_{n+1}² xⁿ`
    F3Half3Half2,
    /// `F(3/2, 3/2; 3; x) = Σ 8(n+1)/(n+2) W_{n+1}² xⁿ`
    F3Half3Half3,
}

impl HypKind {
    pub const ALL: [HypKind; 4] = [
        HypKind::FHalfHalf1,
        HypKind::FHalfHalf2,
        HypKind::F3Half3Half2,
        HypKind::F3Half3Half3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HypKind::FHalfHalf1 => "F_half_half_1",
            HypKind::FHalfHalf2 => "F_half_half_2",
            HypKind::F3Half3Half2 => "F_3half_3half_2",
            HypKind::F3Half3Half3 => "F_3half_3half_3",
        }
    }

    /// `(2a, 2b, c)`.
    fn params(self) -> (u64, u64, u64) {
        match self {
            HypKind::FHalfHalf1 => (1, 1, 1),
            HypKind::FHalfHalf2 => (1, 1, 2),
            HypKind::F3Half3Half2 => (3, 3, 2),
            HypKind::F3Half3Half3 => (3, 3, 3),
        }
    }

    /// Kind for `F(a, b; c; ·)` with `(a, b, c)` given exactly.
    pub fn from_params(a: &BigRational, b: &BigRational, c: &BigRational) -> Option<HypKind> {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let three_half = BigRational::new(BigInt::from(3), BigInt::from(2));
        let int = |k: i64| BigRational::from_integer(BigInt::from(k));
        if a != b {
            return None;
        }
        HypKind::ALL.into_iter().find(|k| {
            let (a2, _, ck) = k.params();
            let ak = if a2 == 1 { &half } else { &three_half };
            a == ak && c == &int(ck as i64)
        })
    }

    /// Term ratio `a_{n+1}/a_n = (n+a)(n+b)/((n+c)(n+1))`.
    fn ratio(self, n: usize) -> BigRational {
        let (a2, b2, c) = self.params();
        let n = n as u64;
        BigRational::new(
            BigInt::from((2 * n + a2) * (2 * n + b2)),
            BigInt::from(4 * (n + c) * (n + 1)),
        )
    }
}

impl fmt::Display for HypKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HypKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        HypKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown series kind `{s}`")))
    }
}

/// Partial sum with a bound on the (nonnegative) remainder.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesEval {
    pub terms_used: usize,
    pub partial: Interval,
    /// `tail_bound.hi()` bounds the remainder from above; the remainder is
    /// never negative for the series in this crate.
    pub tail_bound: Interval,
}

impl SeriesEval {
    /// `[partial.lo, partial.hi + tail]`.
    pub fn enclosure(&self) -> Interval {
        let t = self.tail_bound.round_to(self.partial.precision());
        &self.partial + &Interval::from_raw(BigInt::zero(), t.hi_scaled().clone(), t.precision())
    }

    /// `partial ± tail`, the symmetric form.
    pub fn symmetric(&self) -> Interval {
        let t = self.tail_bound.hi_scaled().clone();
        let p = self.tail_bound.precision();
        &self.partial + &Interval::from_raw(-t.clone(), t, p)
    }
}

pub fn hyp_series(kind: HypKind, x: &BigRational, precision: u32) -> Result<SeriesEval> {
    hyp_series_with(kind, x, precision, DEFAULT_MAX_TERMS)
}

/// Sum until the remainder bound drops below `2^-(precision+2)` or
/// `max_terms` terms have been added.
///
/// Remainder bounds: each kind has monotone term ratios, giving a geometric
/// bound, and `n W_n² < 1/π` gives a second bound that stays useful as
/// `x → 1`. The smaller of the two is reported.
pub fn hyp_series_with(
    kind: HypKind,
    x: &BigRational,
    precision: u32,
    max_terms: usize,
) -> Result<SeriesEval> {
    check_unit(x, "x")?;
    if max_terms == 0 {
        return domain("max_terms must be positive");
    }
    let log_terms = usize::BITS - max_terms.leading_zeros();
    let q = precision + 16 + log_terms;
    let xi = Interval::from_rational(x, q);
    let inv_1mx = (BigRational::one() - x).recip();
    let inv_pi = enclose_constant(Constant::Pi, q)?.recip()?;
    let target = Interval::from_ratio(&BigInt::one(), &(BigInt::one() << (precision as usize + 2)), q)?;

    let mut coeff = Interval::one(q);
    let mut xpow = Interval::one(q);
    let mut sum = Interval::zero(q);
    let mut n = 0usize;
    loop {
        sum = &sum + &(&coeff * &xpow);
        // remainder after term n
        coeff = coeff.mul_rational(&kind.ratio(n));
        xpow = &xpow * &xi;
        let tail = remainder_bound(kind, n, &coeff, &xpow, x, &inv_1mx, &inv_pi);
        n += 1;
        let done = tail.hi_scaled() <= target.lo_scaled();
        if done || n >= max_terms || x.is_zero() {
            return Ok(SeriesEval {
                terms_used: n,
                partial: sum.round_to(precision),
                tail_bound: Interval::from_raw(BigInt::zero(), tail.abs().hi_scaled().clone(), q)
                    .round_to(precision),
            });
        }
    }
}

/// Bound on `Σ_{k>n} a_k x^k`, given `coeff = a_{n+1}` and `xpow = x^{n+1}`.
fn remainder_bound(
    kind: HypKind,
    n: usize,
    coeff: &Interval,
    xpow: &Interval,
    x: &BigRational,
    inv_1mx: &BigRational,
    inv_pi: &Interval,
) -> Interval {
    let term = coeff * xpow;
    let m = BigRational::from_integer(BigInt::from(n + 1));
    let geometric = match kind {
        HypKind::F3Half3Half2 => {
            // ratios decrease towards 1 from above
            let rho_x = kind.ratio(n + 1) * x;
            if rho_x < BigRational::one() {
                Some(term.mul_rational(&(BigRational::one() - rho_x).recip()))
            } else {
                None
            }
        }
        _ => Some(term.mul_rational(inv_1mx)),
    };
    let flat = match kind {
        // a_k ≤ 1/(π k) ⇒ Σ_{k>n} ≤ x^{n+1}/(π (n+1)(1−x))
        HypKind::FHalfHalf1 => (xpow * inv_pi).mul_rational(&(inv_1mx / &m)),
        // a_k ≤ 1/(π k(k+1)) ⇒ Σ_{k>n} ≤ x^{n+1}/(π (n+1))
        HypKind::FHalfHalf2 => (xpow * inv_pi).mul_rational(&m.recip()),
        // a_k ≤ 4/π
        HypKind::F3Half3Half2 => (xpow * inv_pi).mul_rational(&(inv_1mx * BigRational::from_integer(BigInt::from(4)))),
        // a_k ≤ 8/(π (k+2))
        HypKind::F3Half3Half3 => (xpow * inv_pi).mul_rational(
            &(inv_1mx * BigRational::new(BigInt::from(8), BigInt::from(n + 3))),
        ),
    };
    match geometric {
        Some(g) if g.hi_scaled() < flat.hi_scaled() => g,
        _ => flat,
    }
}

/// Residual of the linear transformation
/// `F(a,b;c;x) − (1−x)^{c−a−b} F(c−a, c−b; c; x)` for the supported
/// parameter triples `(1/2,1/2,1)`, `(1/2,1/2,2)`, `(3/2,3/2,2)`, `(3/2,3/2,3)`.
pub fn lt_check(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    x: &BigRational,
    precision: u32,
) -> Result<Interval> {
    let lhs = HypKind::from_params(a, b, c).ok_or_else(|| {
        Error::Domain(format!("unsupported parameter triple ({a}, {b}, {c})"))
    })?;
    let rhs = HypKind::from_params(&(c - a), &(c - b), c).ok_or_else(|| {
        Error::Domain(format!("unsupported parameter triple ({a}, {b}, {c})"))
    })?;
    let q = precision + 8;
    let f = hyp_series(lhs, x, q)?.enclosure();
    let g = hyp_series(rhs, x, q)?.enclosure();
    let e = c - a - b;
    let one_minus = Interval::from_rational(&(BigRational::one() - x), q);
    let factor = if e.is_zero() {
        Interval::one(q)
    } else if e == BigRational::one() {
        one_minus
    } else if e == -BigRational::one() {
        one_minus.recip()?
    } else {
        return domain(format!("unsupported exponent c − a − b = {e}"));
    };
    Ok((&f - &(&factor * &g)).round_to(precision))
}

/// `F(3/2,3/2;3;x) − (8/π)(4 ln 2 − 4 − ln(1−x))`, bounded as `x → 1⁻`.
pub fn blowup_residual(x: &BigRational, precision: u32) -> Result<Interval> {
    let q = precision + 8;
    let f = hyp_series(HypKind::F3Half3Half3, x, q)?.enclosure();
    let ln2 = enclose_constant(Constant::Ln2, q)?;
    let ln_1mx = Interval::from_rational(&(BigRational::one() - x), q).ln()?;
    let inner = &(&ln2.mul_pow2(2) - &Interval::from_i64(4, q)) - &ln_1mx;
    let pi = enclose_constant(Constant::Pi, q)?;
    let asym = inner.mul_pow2(3).div(&pi)?;
    Ok((&f - &asym).round_to(precision))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn value_at_zero_is_one() {
        for k in HypKind::ALL {
            let s = hyp_series(k, &q(0, 1), 64).unwrap();
            assert!(s.enclosure().contains(&q(1, 1)), "{k}");
        }
    }

    #[test]
    fn first_coefficients() {
        // a_1 for each kind: 1/4, 1/8, 9/8, 3/4
        let x = q(1, 1 << 30);
        let expect = [q(1, 4), q(1, 8), q(9, 8), q(3, 4)];
        for (k, a1) in HypKind::ALL.into_iter().zip(expect) {
            let s = hyp_series(k, &x, 100).unwrap().enclosure();
            let approx = (s.mid() - q(1, 1)) / &x;
            assert!((approx - a1).abs() < q(1, 1 << 20), "{k}");
        }
    }

    #[test]
    fn f2_near_one_approaches_four_over_pi() {
        let x = BigRational::one() - BigRational::new(BigInt::one(), BigInt::one() << 20usize);
        let s = hyp_series_with(HypKind::FHalfHalf2, &x, 64, 8192).unwrap();
        let e = s.enclosure();
        let four_pi = 4.0 / std::f64::consts::PI;
        assert!((e.lo_f64() - four_pi).abs() < 1e-3 && (e.hi_f64() - four_pi).abs() < 1e-3);
    }

    #[test]
    fn unsupported_triples_are_rejected() {
        assert!(lt_check(&q(1, 3), &q(1, 3), &q(1, 1), &q(1, 2), 64).is_err());
        assert!(hyp_series(HypKind::FHalfHalf1, &q(1, 1), 64).is_err());
    }

    #[test]
    fn names_round_trip() {
        for k in HypKind::ALL {
            assert_eq!(k.name().parse::<HypKind>().unwrap(), k);
        }
    }
}
