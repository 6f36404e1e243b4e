use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::agm::{check_unit, exp_k_agm};
use super::series::{hyp_series, HypKind, SeriesEval};
use crate::coeff::CoefficientTable;
use crate::error::{domain, Result};
use crate::exact::{enclose_constant, Constant, ExactValue, Interval, PiExpression};

/// Number of `u_n` terms used for the series form of `g₀`.
pub const G0_SERIES_TERMS: usize = 256;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `Σ_{n<n_terms} b_n xⁿ` with remainder bound `4(1/√(1−x) − Σ_{n<n_terms} W_n xⁿ)`,
/// valid because `0 < b_n < 4 W_n`.
pub fn exp_k(x: &BigRational, precision: u32, n_terms: usize, table: &mut CoefficientTable) -> Result<SeriesEval> {
    check_unit(x, "x")?;
    if n_terms == 0 {
        return domain("n_terms must be positive");
    }
    let q = precision + 16 + (usize::BITS - n_terms.leading_zeros());
    let exact_top = (n_terms - 1).min(table.exact_limit());
    let mut exact = PiExpression::zero(true);
    let mut w_sum = BigRational::zero();
    let mut xn = BigRational::one();
    for n in 0..n_terms {
        if n <= exact_top {
            let b = table.b(n).clone();
            exact.add_scaled_assign(&b, &xn);
        }
        w_sum += table.wallis(n) * &xn;
        if n + 1 < n_terms {
            xn *= x;
        }
    }
    let mut partial = exact.evaluate(q)?;
    if n_terms - 1 > exact_top {
        let xi = Interval::from_rational(x, q);
        let mut xpow = Interval::from_rational(x, q).pow_int(exact_top as i64 + 1)?;
        for n in exact_top + 1..n_terms {
            partial = &partial + &(&table.b_enclosure(n, q)? * &xpow);
            xpow = &xpow * &xi;
        }
    }
    let inv_sqrt = Interval::from_rational(&(BigRational::one() - x), q).sqrt()?.recip()?;
    let tail = (&inv_sqrt - &Interval::from_rational(&w_sum, q)).mul_int(&BigInt::from(4));
    Ok(SeriesEval {
        terms_used: n_terms,
        partial: partial.round_to(precision),
        tail_bound: Interval::from_raw(BigInt::zero(), tail.abs().hi_scaled().clone(), q).round_to(precision),
    })
}

/// Enclosures of `g`, `g₀ = (1−x) g`, the series form `Σ u_n xⁿ` of `g₀`,
/// `G = (π/8 F(1/2,1/2;2;x) − 1/2) e^{K(√x)}` and `G′ = (π/64) e^{K(√x)} g`.
#[derive(Clone, Debug, Serialize)]
pub struct GValues {
    #[serde(serialize_with = "ser_interval")]
    pub g: Interval,
    #[serde(serialize_with = "ser_interval")]
    pub g0: Interval,
    #[serde(serialize_with = "ser_interval")]
    pub g0_u_series: Interval,
    #[serde(rename = "G", serialize_with = "ser_interval")]
    pub big_g: Interval,
    #[serde(rename = "G_prime", serialize_with = "ser_interval")]
    pub big_g_prime: Interval,
    /// Whether `g₀` from the hypergeometric form overlaps the `u_n` series.
    pub consistent: bool,
}

fn ser_interval<S: serde::Serializer>(v: &Interval, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_decimal(40))
}

pub fn g_funcs(x: &BigRational, precision: u32) -> Result<GValues> {
    g_funcs_with(x, precision, &mut CoefficientTable::new())
}

pub fn g_funcs_with(x: &BigRational, precision: u32, table: &mut CoefficientTable) -> Result<GValues> {
    check_unit(x, "x")?;
    let q = precision + 16;
    let f33_3 = hyp_series(HypKind::F3Half3Half3, x, q)?.enclosure();
    let f33_2 = hyp_series(HypKind::F3Half3Half2, x, q)?.enclosure();
    let f11_2 = hyp_series(HypKind::FHalfHalf2, x, q)?.enclosure();
    let e = exp_k_agm(x, q)?;
    let pi = enclose_constant(Constant::Pi, q)?;
    let four = Interval::from_i64(4, q);

    let g = &(&f33_3 + &(&(&pi * &f33_2) * &f11_2)) - &(&four * &f33_2);
    let one_minus = Interval::from_rational(&(BigRational::one() - x), q);
    let g0 = &(&(&one_minus * &f33_3) + &(&pi * &f11_2.sqr())) - &(&four * &f11_2);
    let g0_u = g0_u_series(x, q, G0_SERIES_TERMS, table)?;
    let consistent = g0_u.overlaps(&g0) && g0.overlaps(&(&g * &one_minus));
    let big_g = &(&(&pi.mul_pow2(-3) * &f11_2) - &Interval::one(q).mul_pow2(-1)) * &e;
    let big_g_prime = &(&pi.mul_pow2(-6) * &e) * &g;
    Ok(GValues {
        g: g.round_to(precision),
        g0: g0.round_to(precision),
        g0_u_series: g0_u.round_to(precision),
        big_g: big_g.round_to(precision),
        big_g_prime: big_g_prime.round_to(precision),
        consistent,
    })
}

/// `Σ_{n≤N} u_n xⁿ` plus the remainder bound `M_N x^{N+1}/(1−x)` where
/// `|u_n| ≤ M_N = 8 w_{⌈(N+1)/2⌉} + 6(2N+3)/((N+2)(N+3)) W_{N+1}²` for `n > N`.
pub fn g0_u_series(x: &BigRational, precision: u32, n_max: usize, table: &mut CoefficientTable) -> Result<Interval> {
    check_unit(x, "x")?;
    let mut sum = PiExpression::zero(false);
    let mut xn = BigRational::one();
    for n in 0..=n_max {
        let u = table.u(n).clone();
        sum.add_scaled_assign(&u, &xn);
        xn *= x;
    }
    let n = n_max;
    let j = (n + 2) / 2;
    let wj = table.wallis(j).clone();
    let wn1 = table.wallis(n + 1).clone();
    let m = &wj * &wj * rat(8, j as i64 + 1)
        + &wn1 * &wn1 * rat(6 * (2 * n as i64 + 3), ((n + 2) * (n + 3)) as i64);
    let bound = m * &xn / (BigRational::one() - x);
    let q = precision + 8;
    let b = Interval::from_rational(&bound, q);
    let spread = Interval::from_raw(-b.hi_scaled().clone(), b.hi_scaled().clone(), q);
    Ok((&sum.evaluate(q)? + &spread).round_to(precision))
}

/// `Φ(x) = e^{K(√x)} − e^{K(√(1−x))} + 4/√x − 4/√(1−x)` for `x ∈ (0, 1)`.
pub fn phi(x: &BigRational, precision: u32) -> Result<Interval> {
    check_open(x)?;
    let q = precision + 16;
    let y = BigRational::one() - x;
    let ex = exp_k_agm(x, q)?;
    let ey = exp_k_agm(&y, q)?;
    let four = Interval::from_i64(4, q);
    let sx = four.div(&Interval::from_rational(x, q).sqrt()?)?;
    let sy = four.div(&Interval::from_rational(&y, q).sqrt()?)?;
    Ok((&(&(&ex - &ey) + &sx) - &sy).round_to(precision))
}

fn check_open(x: &BigRational) -> Result<()> {
    check_unit(x, "x")?;
    if x.is_zero() {
        return domain("x must lie in (0, 1)");
    }
    Ok(())
}

/// `H(x) = Φ(x)/(1 − 2x)`, with the removable value `−G₄′(1/2)` at `x = 1/2`.
pub fn h_value(x: &BigRational, precision: u32) -> Result<Interval> {
    check_open(x)?;
    let half = rat(1, 2);
    if x == &half {
        return minus_g4_prime_half(precision);
    }
    let q = precision + 16;
    let d = BigRational::one() - x * rat(2, 1);
    Ok(phi(x, q)?.mul_rational(&d.recip()).round_to(precision))
}

/// `−G₄′(1/2) = 4√2 − (π/4) F(1/2,1/2;2;1/2) e^{K(1/√2)}`.
pub fn minus_g4_prime_half(precision: u32) -> Result<Interval> {
    let q = precision + 16;
    let half = rat(1, 2);
    let f = hyp_series(HypKind::FHalfHalf2, &half, q)?.enclosure();
    let e = exp_k_agm(&half, q)?;
    let pi = enclose_constant(Constant::Pi, q)?;
    let s2 = enclose_constant(Constant::SqrtTwo, q)?;
    Ok((&s2.mul_pow2(2) - &(&(&pi.mul_pow2(-2) * &f) * &e)).round_to(precision))
}

/// The exact constant `α = e^{π/2} − 4`.
pub fn alpha_exact() -> ExactValue {
    ExactValue::from(PiExpression::exp_half_pi()).sub(&ExactValue::from_integer(4))
}

pub fn alpha(precision: u32) -> Result<Interval> {
    alpha_exact().evaluate(precision)
}

/// `β = 4√2 − Γ(3/4)²/√π · exp(Γ(1/4)²/(4√π))` from the constant enclosures.
pub fn beta(precision: u32) -> Result<Interval> {
    let q = precision + 16;
    let g14 = enclose_constant(Constant::GammaQuarter, q)?;
    let g34 = enclose_constant(Constant::GammaThreeQuarter, q)?;
    let sp = enclose_constant(Constant::SqrtPi, q)?;
    let s2 = enclose_constant(Constant::SqrtTwo, q)?;
    let k = g14.sqr().div(&sp.mul_pow2(2))?;
    let term = g34.sqr().div(&sp)?;
    Ok((&s2.mul_pow2(2) - &(&term * &k.exp()?)).round_to(precision))
}

/// Central difference of `G` with step `h`, its Richardson refinement with
/// step `h/2`, and the enclosed `G′(x)`.
#[derive(Clone, Debug)]
pub struct DerivativeCheck {
    pub central: Interval,
    pub richardson: Interval,
    pub g_prime: Interval,
}

pub fn derivative_check(x: &BigRational, h: &BigRational, precision: u32) -> Result<DerivativeCheck> {
    let q = precision + 16;
    let mut table = CoefficientTable::new();
    let mut big_g = |t: &BigRational| -> Result<Interval> {
        check_open(t)?;
        let q2 = q + 8;
        let f = hyp_series(HypKind::FHalfHalf2, t, q2)?.enclosure();
        let e = exp_k_agm(t, q2)?;
        let pi = enclose_constant(Constant::Pi, q2)?;
        Ok(&(&(&pi.mul_pow2(-3) * &f) - &Interval::one(q2).mul_pow2(-1)) * &e)
    };
    let diff = |g: &mut dyn FnMut(&BigRational) -> Result<Interval>, h: &BigRational| -> Result<Interval> {
        let up = g(&(x + h))?;
        let down = g(&(x - h))?;
        Ok((&up - &down).mul_rational(&(h * rat(2, 1)).recip()))
    };
    let d1 = diff(&mut big_g, h)?;
    let half_h = h * rat(1, 2);
    let d2 = diff(&mut big_g, &half_h)?;
    let richardson = (&d2.mul_int(&BigInt::from(4)) - &d1).mul_rational(&rat(1, 3));
    let g_prime = g_funcs_with(x, q, &mut table)?.big_g_prime;
    Ok(DerivativeCheck {
        central: d1.round_to(precision),
        richardson: richardson.round_to(precision),
        g_prime: g_prime.round_to(precision),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Sign;

    #[test]
    fn alpha_beta_values() {
        let a = alpha(64).unwrap();
        assert!((a.to_f64() - 0.810477380965).abs() < 1e-10);
        let b = beta(64).unwrap();
        let b2 = minus_g4_prime_half(64).unwrap();
        assert!(b.overlaps(&b2), "{b} vs {b2}");
        assert!((b.to_f64() - 0.24673).abs() < 1e-4);
    }

    #[test]
    fn g_positive_at_half() {
        let v = g_funcs(&rat(1, 2), 96).unwrap();
        assert_eq!(v.g.sign(), Sign::Positive);
        assert!(v.consistent);
    }

    #[test]
    fn exp_k_series_agrees_with_agm() {
        let mut t = CoefficientTable::new();
        let s = exp_k(&rat(1, 4), 80, 120, &mut t).unwrap();
        let a = exp_k_agm(&rat(1, 4), 80).unwrap();
        assert!(s.enclosure().overlaps(&a));
    }

    #[test]
    fn h_is_symmetric() {
        let a = h_value(&rat(1, 10), 64).unwrap();
        let b = h_value(&rat(9, 10), 64).unwrap();
        assert!(a.overlaps(&b));
    }
}
