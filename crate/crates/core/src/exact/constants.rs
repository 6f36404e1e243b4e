//! Certified enclosures of the transcendental constants used throughout.
//!
//! Every constant is returned as the canonical one-ulp cell
//! `[⌊c·2^P⌋, ⌊c·2^P⌋ + 1] / 2^P` (or a point for dyadic values), which makes
//! enclosures at higher precision nest inside those at lower precision.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use super::interval::Interval;
use crate::elliptic::agm;
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constant {
    Pi,
    ExpHalfPi,
    GammaQuarter,
    GammaThreeQuarter,
    SqrtPi,
    SqrtTwo,
    Ln2,
}

impl Constant {
    pub const ALL: [Constant; 7] = [
        Constant::Pi,
        Constant::ExpHalfPi,
        Constant::GammaQuarter,
        Constant::GammaThreeQuarter,
        Constant::SqrtPi,
        Constant::SqrtTwo,
        Constant::Ln2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::ExpHalfPi => "exp_half_pi",
            Constant::GammaQuarter => "gamma_quarter",
            Constant::GammaThreeQuarter => "gamma_three_quarter",
            Constant::SqrtPi => "sqrt_pi",
            Constant::SqrtTwo => "sqrt_two",
            Constant::Ln2 => "ln2",
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Constant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Constant::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownConstant(s.to_string()))
    }
}

type Cache = Mutex<HashMap<(Constant, u32), Interval>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Enclosure of `c` with width at most `2^(-precision+2)`.
pub fn enclose_constant(c: Constant, precision: u32) -> Result<Interval> {
    if precision < 8 {
        return Err(Error::Domain(format!(
            "precision must be at least 8 bits, got {precision}"
        )));
    }
    if let Some(hit) = cache().lock().unwrap().get(&(c, precision)) {
        return Ok(hit.clone());
    }
    // computed outside the lock; racing threads produce identical results
    let value = canonical(c, precision)?;
    cache()
        .lock()
        .unwrap()
        .insert((c, precision), value.clone());
    Ok(value)
}

pub fn enclose_constant_named(name: &str, precision: u32) -> Result<Interval> {
    enclose_constant(name.parse()?, precision)
}

fn canonical(c: Constant, precision: u32) -> Result<Interval> {
    let mut guard = 32u32;
    loop {
        let raw = raw_enclosure(c, precision + guard)?;
        let snapped = raw.round_to(precision);
        if snapped.width_ulps() <= BigInt::one() || guard >= 4096 {
            return Ok(snapped);
        }
        guard *= 2;
    }
}

fn raw_enclosure(c: Constant, q: u32) -> Result<Interval> {
    Ok(match c {
        Constant::Pi => {
            // Machin: π = 16·atan(1/5) − 4·atan(1/239)
            let a = atan_inv(5, q + 8).mul_int(&BigInt::from(16));
            let b = atan_inv(239, q + 8).mul_int(&BigInt::from(4));
            (&a - &b).round_to(q)
        }
        Constant::Ln2 => atanh_inv(3, q + 8).mul_pow2(1).round_to(q),
        Constant::SqrtTwo => Interval::from_i64(2, q).sqrt()?,
        Constant::SqrtPi => enclose_constant(Constant::Pi, q + 4)?.sqrt()?.round_to(q),
        Constant::ExpHalfPi => {
            let half_pi = enclose_constant(Constant::Pi, q + 8)?.mul_pow2(-1);
            half_pi.exp()?.round_to(q)
        }
        Constant::GammaQuarter => {
            // K(1/√2) = π/(2·AGM(1, 1/√2)) = Γ(1/4)²/(4√π)
            // ⇒ Γ(1/4)² = 2·π·√π / AGM(1, 1/√2)
            let w = q + 16;
            let pi = enclose_constant(Constant::Pi, w)?;
            let sqrt_pi = enclose_constant(Constant::SqrtPi, w)?;
            let inv_sqrt2 = enclose_constant(Constant::SqrtTwo, w)?.mul_pow2(-1);
            let m = agm(&Interval::one(w), &inv_sqrt2, w)?;
            let sq = (&pi * &sqrt_pi).mul_pow2(1).div(&m)?;
            sq.sqrt()?.round_to(q)
        }
        Constant::GammaThreeQuarter => {
            // reflection: Γ(1/4)·Γ(3/4) = π√2
            let w = q + 8;
            let pi = enclose_constant(Constant::Pi, w)?;
            let s2 = enclose_constant(Constant::SqrtTwo, w)?;
            let g = enclose_constant(Constant::GammaQuarter, w)?;
            (&pi * &s2).div(&g)?.round_to(q)
        }
    })
}

/// `atan(1/m)` by the alternating Gregory series; the tail is bounded by the
/// first omitted term.
fn atan_inv(m: u64, q: u32) -> Interval {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut power = m.clone();
    let mut sum = Interval::zero(q);
    let mut k: u64 = 0;
    loop {
        let den = &power * BigInt::from(2 * k + 1);
        let term = Interval::from_ratio(&BigInt::one(), &den, q).expect("nonzero");
        if term.hi_scaled() <= &BigInt::one() {
            // |remaining tail| ≤ this term
            let t = term.hi_scaled().clone();
            return Interval::from_raw(sum.lo_scaled() - &t, sum.hi_scaled() + &t, q);
        }
        sum = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        power *= &m2;
        k += 1;
    }
}

/// `atanh(1/m)` for `m ≥ 2`; all terms are positive and the tail after a
/// term `t` is below `t / (m² − 1)`.
fn atanh_inv(m: u64, q: u32) -> Interval {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut power = m.clone();
    let mut sum = Interval::zero(q);
    let mut k: u64 = 0;
    loop {
        let den = &power * BigInt::from(2 * k + 1);
        let term = Interval::from_ratio(&BigInt::one(), &den, q).expect("nonzero");
        sum = &sum + &term;
        if term.hi_scaled() <= &BigInt::one() {
            return Interval::from_raw(sum.lo_scaled().clone(), sum.hi_scaled() + 1, q);
        }
        power *= &m2;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn dec(s: &str) -> BigRational {
        let (i, f) = s.split_once('.').unwrap();
        let den = BigInt::from(10).pow(f.len() as u32);
        let num: BigInt = format!("{i}{f}").parse().unwrap();
        BigRational::new(num, den)
    }

    #[test]
    fn pi_contains_reference_digits() {
        let pi = enclose_constant(Constant::Pi, 64).unwrap();
        // 20-digit truncations bracket π
        assert!(pi.lo() <= dec("3.14159265358979323847"));
        assert!(pi.hi() >= dec("3.14159265358979323846"));
        assert!(pi.width() <= BigRational::new(BigInt::one(), BigInt::one() << 62usize));
    }

    #[test]
    fn names_round_trip() {
        for c in Constant::ALL {
            assert_eq!(c.name().parse::<Constant>().unwrap(), c);
        }
        assert!(matches!(
            enclose_constant_named("euler_gamma", 64),
            Err(Error::UnknownConstant(_))
        ));
    }

    #[test]
    fn low_precision_is_rejected() {
        assert!(enclose_constant(Constant::Pi, 4).is_err());
    }
}
