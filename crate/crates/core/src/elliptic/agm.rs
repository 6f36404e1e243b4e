use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::exact::{enclose_constant, Constant, Interval, Sign};

/// Enclosure of the arithmetic-geometric mean of two positive enclosures.
///
/// Each step keeps `min(a, b) ≤ M ≤ max(a, b)`, so the hull of the current
/// pair always contains the limit.
pub fn agm(a: &Interval, b: &Interval, precision: u32) -> Result<Interval> {
    if a.sign() != Sign::Positive || b.sign() != Sign::Positive {
        return domain(format!("agm requires positive arguments, got {a} and {b}"));
    }
    let q = precision + 16;
    let mut x = a.round_to(q);
    let mut y = b.round_to(q);
    let mut hull = x.hull(&y);
    for _ in 0..200 {
        let nx = (&x + &y).mul_pow2(-1);
        let ny = (&x * &y).sqrt()?;
        let next = nx.hull(&ny);
        let shrunk = next.width() < hull.width();
        x = nx;
        y = ny;
        hull = next;
        if !shrunk || hull.width_ulps() <= BigInt::from(4) {
            break;
        }
    }
    Ok(hull.round_to(precision))
}

pub(crate) fn check_unit(x: &BigRational, what: &str) -> Result<()> {
    if x < &BigRational::zero() || x >= &BigRational::one() {
        return domain(format!("{what} = {x} must lie in [0, 1)"));
    }
    Ok(())
}

/// Enclosure of `√(1 − x)`, the complementary modulus for `x = r²`.
pub(crate) fn complementary(x: &BigRational, q: u32) -> Result<Interval> {
    Interval::from_rational(&(BigRational::one() - x), q).sqrt()
}

/// `K(r) = π / (2 AGM(1, r′))` for the squared modulus `x = r² ∈ [0, 1)`.
pub fn agm_k(x: &BigRational, precision: u32) -> Result<Interval> {
    check_unit(x, "r²")?;
    let q = precision + 24;
    let s = complementary(x, q)?;
    let m = agm(&Interval::one(q), &s, q)?;
    let pi = enclose_constant(Constant::Pi, q)?;
    Ok(pi.mul_pow2(-1).div(&m)?.round_to(precision))
}

/// `exp(K(√x))` from the AGM value of `K`.
pub fn exp_k_agm(x: &BigRational, precision: u32) -> Result<Interval> {
    let k = agm_k(x, precision + 16)?;
    Ok(k.exp()?.round_to(precision))
}

/// `K(r) − ln(4/r′)` for `x = r² ∈ (0, 1)`.
pub fn asymptotic_defect(x: &BigRational, precision: u32) -> Result<Interval> {
    check_unit(x, "r²")?;
    let q = precision + 16;
    let k = agm_k(x, q)?;
    // ln(4/r′) = 2 ln 2 − ln(1 − x)/2
    let ln2 = enclose_constant(Constant::Ln2, q)?;
    let ln_s2 = Interval::from_rational(&(BigRational::one() - x), q).ln()?;
    let log_term = &ln2.mul_pow2(1) - &ln_s2.mul_pow2(-1);
    Ok((&k - &log_term).round_to(precision))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn k_at_zero_is_half_pi() {
        let k = agm_k(&q(0, 1), 80).unwrap();
        let hp = enclose_constant(Constant::Pi, 80).unwrap().mul_pow2(-1);
        assert!(k.overlaps(&hp));
        assert!(k.width_f64() < 1e-20);
    }

    #[test]
    fn k_small_modulus_near_half_pi() {
        let k = agm_k(&q(1, 1_000_000), 64).unwrap();
        assert!((k.to_f64() - std::f64::consts::FRAC_PI_2).abs() < 1e-5);
    }

    #[test]
    fn domain_is_checked() {
        assert!(agm_k(&q(1, 1), 64).is_err());
        assert!(agm_k(&q(-1, 4), 64).is_err());
    }

    #[test]
    fn defect_near_one_is_small() {
        let x = BigRational::one() - BigRational::new(BigInt::one(), BigInt::one() << 16usize);
        let d = asymptotic_defect(&x, 64).unwrap();
        assert!(d.abs().hi_f64() < 1e-3);
        let half = asymptotic_defect(&q(1, 4), 64).unwrap();
        assert_eq!(half.sign(), Sign::Positive);
    }
}
