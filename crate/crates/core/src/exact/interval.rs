//! Fixed-point interval arithmetic with outward rounding.
//!
//! An [`Interval`] stores two big integers `lo`, `hi` and a precision `p`;
//! the enclosed set is `[lo / 2^p, hi / 2^p]`. Every operation rounds the
//! lower end toward −∞ and the upper end toward +∞, so the true result of an
//! operation applied to any members of the inputs lies in the output.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on the bit length of any scaled integer produced by the
/// checked entry points ([`interval_fn`], `eval_pi_expression`).
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 22;

/// Certified sign of an enclosure.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Positive,
    Negative,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

pub(crate) fn floor_shr(x: &BigInt, s: u32) -> BigInt {
    // `>>` on BigInt rounds toward −∞.
    x >> s as usize
}

pub(crate) fn ceil_shr(x: &BigInt, s: u32) -> BigInt {
    -floor_shr(&-x, s)
}

pub(crate) fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

pub(crate) fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn shl(x: &BigInt, s: u32) -> BigInt {
    x << s as usize
}

/// Rescale `x` from precision `from` to `to`, rounding down.
fn rescale_floor(x: &BigInt, from: u32, to: u32) -> BigInt {
    match to.cmp(&from) {
        Ordering::Greater => shl(x, to - from),
        Ordering::Equal => x.clone(),
        Ordering::Less => floor_shr(x, from - to),
    }
}

fn rescale_ceil(x: &BigInt, from: u32, to: u32) -> BigInt {
    match to.cmp(&from) {
        Ordering::Greater => shl(x, to - from),
        Ordering::Equal => x.clone(),
        Ordering::Less => ceil_shr(x, from - to),
    }
}

impl Interval {
    pub fn new(lo: BigInt, hi: BigInt, prec: u32) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!(
                "interval bounds out of order: {lo} > {hi}"
            )));
        }
        Ok(Interval { lo, hi, prec })
    }

    pub(crate) fn from_raw(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi, "interval bounds out of order");
        Interval { lo, hi, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Interval::from_raw(BigInt::zero(), BigInt::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Interval::from_int(&BigInt::one(), prec)
    }

    pub fn from_int(v: &BigInt, prec: u32) -> Self {
        let s = shl(v, prec);
        Interval::from_raw(s.clone(), s, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Interval::from_int(&BigInt::from(v), prec)
    }

    /// Tightest enclosure of `num / den` on the grid `2^-prec`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (n, d) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        let scaled = shl(&n, prec);
        Ok(Interval::from_raw(
            floor_div(&scaled, &d),
            ceil_div(&scaled, &d),
            prec,
        ))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        // BigRational keeps a positive, nonzero denominator.
        let scaled = shl(q.numer(), prec);
        Interval::from_raw(
            floor_div(&scaled, q.denom()),
            ceil_div(&scaled, q.denom()),
            prec,
        )
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn lo_scaled(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_scaled(&self) -> &BigInt {
        &self.hi
    }

    fn denom(&self) -> BigInt {
        shl(&BigInt::one(), self.prec)
    }

    pub fn lo(&self) -> BigRational {
        BigRational::new(self.lo.clone(), self.denom())
    }

    pub fn hi(&self) -> BigRational {
        BigRational::new(self.hi.clone(), self.denom())
    }

    pub fn mid(&self) -> BigRational {
        BigRational::new(&self.lo + &self.hi, shl(&BigInt::one(), self.prec + 1))
    }

    pub fn radius(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, shl(&BigInt::one(), self.prec + 1))
    }

    pub fn width(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, self.denom())
    }

    /// Width measured in units of `2^-prec`.
    pub fn width_ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo().to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi().to_f64().unwrap_or(f64::NAN)
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn sign(&self) -> Sign {
        if self.lo.is_positive() {
            Sign::Positive
        } else if self.hi.is_negative() {
            Sign::Negative
        } else {
            Sign::Undecided
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        let s = q * BigRational::from_integer(self.denom());
        BigRational::from_integer(self.lo.clone()) <= s
            && s <= BigRational::from_integer(self.hi.clone())
    }

    /// `other ⊆ self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        let p = self.prec.max(other.prec);
        rescale_floor(&self.lo, self.prec, p) <= rescale_floor(&other.lo, other.prec, p)
            && rescale_floor(&other.hi, other.prec, p) <= rescale_floor(&self.hi, self.prec, p)
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        let p = self.prec.max(other.prec);
        let (al, ah) = self.aligned(p);
        let (bl, bh) = other.aligned(p);
        al <= bh && bl <= ah
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        let p = self.prec.max(other.prec);
        let (al, ah) = self.aligned(p);
        let (bl, bh) = other.aligned(p);
        Interval::from_raw(al.min(bl), ah.max(bh), p)
    }

    /// Bit length of the larger endpoint magnitude.
    pub fn magnitude_bits(&self) -> u64 {
        self.lo.bits().max(self.hi.bits())
    }

    pub fn check_budget(&self, budget: u64) -> Result<()> {
        let needed = self.magnitude_bits();
        if needed > budget {
            return Err(Error::PrecisionBudget { needed, budget });
        }
        Ok(())
    }

    fn aligned(&self, p: u32) -> (BigInt, BigInt) {
        debug_assert!(p >= self.prec);
        (shl(&self.lo, p - self.prec), shl(&self.hi, p - self.prec))
    }

    /// Re-express on the grid `2^-prec`, rounding outward.
    pub fn round_to(&self, prec: u32) -> Interval {
        Interval::from_raw(
            rescale_floor(&self.lo, self.prec, prec),
            rescale_ceil(&self.hi, self.prec, prec),
            prec,
        )
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            Interval::from_raw(BigInt::zero(), (-&self.lo).max(self.hi.clone()), self.prec)
        }
    }

    /// Upper bound of `|x|` on the grid of this interval.
    pub fn mag_scaled(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn sqr(&self) -> Interval {
        let a = self.abs();
        let lo = floor_shr(&(&a.lo * &a.lo), a.prec);
        let hi = ceil_shr(&(&a.hi * &a.hi), a.prec);
        Interval::from_raw(lo, hi, a.prec)
    }

    pub fn mul_rational(&self, q: &BigRational) -> Interval {
        let (n, d) = (q.numer(), q.denom());
        let (a, b) = if n.is_negative() {
            (&self.hi, &self.lo)
        } else {
            (&self.lo, &self.hi)
        };
        Interval::from_raw(
            floor_div(&(a * n), d),
            ceil_div(&(b * n), d),
            self.prec,
        )
    }

    pub fn add_rational(&self, q: &BigRational) -> Interval {
        self + &Interval::from_rational(q, self.prec)
    }

    pub fn mul_int(&self, k: &BigInt) -> Interval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Interval::from_raw(b, a, self.prec)
        } else {
            Interval::from_raw(a, b, self.prec)
        }
    }

    /// Division by a positive integer.
    pub fn div_uint(&self, k: u64) -> Interval {
        debug_assert!(k > 0);
        let d = BigInt::from(k);
        Interval::from_raw(floor_div(&self.lo, &d), ceil_div(&self.hi, &d), self.prec)
    }

    pub fn div_rational(&self, q: &BigRational) -> Result<Interval> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul_rational(&q.recip()))
    }

    /// Multiply by `2^k` (k may be negative), rounding outward when shifting right.
    pub fn mul_pow2(&self, k: i64) -> Interval {
        if k >= 0 {
            Interval::from_raw(shl(&self.lo, k as u32), shl(&self.hi, k as u32), self.prec)
        } else {
            let s = (-k) as u32;
            Interval::from_raw(floor_shr(&self.lo, s), ceil_shr(&self.hi, s), self.prec)
        }
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        if other.contains_zero() {
            return Err(Error::DivisorContainsZero(other.to_string()));
        }
        let p = self.prec.max(other.prec);
        let (al, ah) = self.aligned(p);
        let (bl, bh) = other.aligned(p);
        let (al, ah) = (shl(&al, p), shl(&ah, p));
        if !al.is_negative() && bl.is_positive() {
            return Ok(Interval::from_raw(
                floor_div(&al, &bh),
                ceil_div(&ah, &bl),
                p,
            ));
        }
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for a in [&al, &ah] {
            for b in [&bl, &bh] {
                let (n, d) = if b.is_negative() { (-a, -b) } else { (a.clone(), b.clone()) };
                let f = floor_div(&n, &d);
                let c = ceil_div(&n, &d);
                lo = Some(match lo {
                    Some(x) => x.min(f),
                    None => f,
                });
                hi = Some(match hi {
                    Some(x) => x.max(c),
                    None => c,
                });
            }
        }
        Ok(Interval::from_raw(lo.unwrap(), hi.unwrap(), p))
    }

    pub fn recip(&self) -> Result<Interval> {
        Interval::one(self.prec).div(self)
    }

    pub fn sqrt(&self) -> Result<Interval> {
        if self.lo.is_negative() {
            return Err(Error::Domain(format!(
                "sqrt of interval with negative lower end {self}"
            )));
        }
        let p = self.prec;
        let lo = shl(&self.lo, p).sqrt();
        let hs = shl(&self.hi, p);
        let mut hi = hs.sqrt();
        if &hi * &hi < hs {
            hi += 1;
        }
        Ok(Interval::from_raw(lo, hi, p))
    }

    pub fn exp(&self) -> Result<Interval> {
        if self.is_point() {
            return exp_scaled(&self.lo, self.prec, self.prec);
        }
        let lo = exp_scaled(&self.lo, self.prec, self.prec)?;
        let hi = exp_scaled(&self.hi, self.prec, self.prec)?;
        Ok(Interval::from_raw(lo.lo, hi.hi, self.prec))
    }

    pub fn ln(&self) -> Result<Interval> {
        if !self.lo.is_positive() {
            return Err(Error::Domain(format!(
                "ln of interval that is not strictly positive {self}"
            )));
        }
        if self.is_point() {
            return ln_scaled(&self.lo, self.prec, self.prec);
        }
        let lo = ln_scaled(&self.lo, self.prec, self.prec)?;
        let hi = ln_scaled(&self.hi, self.prec, self.prec)?;
        Ok(Interval::from_raw(lo.lo, hi.hi, self.prec))
    }

    pub fn pow_int(&self, n: i64) -> Result<Interval> {
        if n < 0 {
            return self.recip()?.pow_int(-n);
        }
        if n == 0 {
            return Ok(Interval::one(self.prec));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let e = u32::try_from(n).map_err(|_| Error::Domain(format!("exponent {n} too large")))?;
        let needed = self.magnitude_bits().saturating_mul(n as u64);
        if needed > DEFAULT_BIT_BUDGET {
            return Err(Error::PrecisionBudget {
                needed,
                budget: DEFAULT_BIT_BUDGET,
            });
        }
        let shift = self.prec * (e - 1);
        let even = n % 2 == 0;
        let (a, b) = if !even || !self.lo.is_negative() {
            (self.lo.clone(), self.hi.clone())
        } else if !self.hi.is_positive() {
            (-&self.hi, -&self.lo)
        } else {
            (BigInt::zero(), self.mag_scaled())
        };
        Ok(Interval::from_raw(
            floor_shr(&a.pow(e), shift),
            ceil_shr(&b.pow(e), shift),
            self.prec,
        ))
    }

    /// Decimal rendering `mid ± radius`; the radius is rounded up and also
    /// absorbs the rounding of the printed midpoint.
    pub fn to_decimal(&self, max_digits: usize) -> String {
        render_decimal(&self.mid(), &self.radius(), max_digits)
    }
}

pub(crate) fn render_decimal(mid: &BigRational, rad: &BigRational, max_digits: usize) -> String {
    let ten = BigInt::from(10);
    let digits = if rad.is_zero() {
        max_digits
    } else {
        let l = rad.to_f64().map(|r| -r.log10()).unwrap_or(max_digits as f64);
        if l.is_finite() {
            (l.ceil() as i64 + 1).clamp(0, max_digits as i64) as usize
        } else {
            max_digits
        }
    };
    let scale = ten.pow(digits as u32);
    let scaled = mid * BigRational::from_integer(scale.clone());
    let rounded = scaled.round();
    let err = (&scaled - &rounded).abs() / BigRational::from_integer(scale.clone());
    let total = rad + err;

    let r = rounded.to_integer();
    let neg = r.is_negative();
    let mag = r.abs();
    let int_part = &mag / &scale;
    let frac = (&mag % &scale).to_string();
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if digits > 0 {
        s.push('.');
        for _ in frac.len()..digits {
            s.push('0');
        }
        s.push_str(&frac);
    }
    s.push_str(" ± ");
    s.push_str(&render_upper(&total));
    s
}

/// Two significant digits, rounded up.
fn render_upper(x: &BigRational) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut e = x.to_f64().map(|v| v.log10().floor() as i32 - 1).unwrap_or(0);
    let pow = |k: i32| -> BigRational {
        if k >= 0 {
            num_traits::pow(ten.clone(), k as usize)
        } else {
            num_traits::pow(ten.clone(), (-k) as usize).recip()
        }
    };
    let mut m = (x / pow(e)).ceil().to_integer();
    while m >= BigInt::from(100) {
        e += 1;
        m = (x / pow(e)).ceil().to_integer();
    }
    while m < BigInt::from(10) {
        e -= 1;
        m = (x / pow(e)).ceil().to_integer();
    }
    let m = m.to_u32().unwrap_or(99);
    format!("{}.{}e{}", m / 10, m % 10, e + 1)
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(40))
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::from_raw(-&self.hi, -&self.lo, self.prec)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        let p = self.prec.max(rhs.prec);
        let (al, ah) = self.aligned(p);
        let (bl, bh) = rhs.aligned(p);
        Interval::from_raw(al + bl, ah + bh, p)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        let p = self.prec.max(rhs.prec);
        let (al, ah) = self.aligned(p);
        let (bl, bh) = rhs.aligned(p);
        Interval::from_raw(al - bh, ah - bl, p)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let p = self.prec.max(rhs.prec);
        let (al, ah) = self.aligned(p);
        let (bl, bh) = rhs.aligned(p);
        if !al.is_negative() && !bl.is_negative() {
            return Interval::from_raw(floor_shr(&(&al * &bl), p), ceil_shr(&(&ah * &bh), p), p);
        }
        let products = [&al * &bl, &al * &bh, &ah * &bl, &ah * &bh];
        let lo = products.iter().min().unwrap();
        let hi = products.iter().max().unwrap();
        Interval::from_raw(floor_shr(lo, p), ceil_shr(hi, p), p)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: &Interval) -> Interval {
                (&self).$m(rhs)
            }
        }
        impl $tr<Interval> for &Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Enclosure of `exp(v / 2^prec)` on the grid `2^-out_prec`.
fn exp_scaled(v: &BigInt, prec: u32, out_prec: u32) -> Result<Interval> {
    let int_bits = v.bits() as i64 - prec as i64;
    if int_bits > 40 {
        return Err(Error::PrecisionBudget {
            needed: 1 << 40,
            budget: DEFAULT_BIT_BUDGET,
        });
    }
    let approx = BigRational::new(v.clone(), shl(&BigInt::one(), prec))
        .to_f64()
        .unwrap_or(0.0);
    let result_bits = (approx.max(0.0) * std::f64::consts::LOG2_E).ceil() as u64 + 2;
    if result_bits > DEFAULT_BIT_BUDGET {
        return Err(Error::PrecisionBudget {
            needed: result_bits,
            budget: DEFAULT_BIT_BUDGET,
        });
    }
    let halvings = (int_bits + 10).max(0) as u32;
    let q = out_prec + halvings + result_bits as u32 + 32;

    // y = v / 2^(prec + halvings), |y| < 2^-10
    let y = Interval::from_raw(
        rescale_floor(v, prec + halvings, q),
        rescale_ceil(v, prec + halvings, q),
        q,
    );
    let one_ulp = BigInt::one();
    let mut sum = Interval::one(q);
    let mut term = Interval::one(q);
    let mut k: u64 = 1;
    loop {
        term = (&term * &y).div_uint(k);
        sum = &sum + &term;
        if term.mag_scaled() <= one_ulp {
            break;
        }
        k += 1;
    }
    // remaining terms sum to less than |term_k| ≤ 1 ulp
    sum = Interval::from_raw(&sum.lo - 1, &sum.hi + 1, q);
    for _ in 0..halvings {
        sum = sum.sqr();
    }
    Ok(sum.round_to(out_prec))
}

/// Enclosure of `ln(v / 2^prec)` for `v > 0` on the grid `2^-out_prec`.
fn ln_scaled(v: &BigInt, prec: u32, out_prec: u32) -> Result<Interval> {
    debug_assert!(v.is_positive());
    // v / 2^prec = m * 2^e with m in [1, 2)
    let e = v.bits() as i64 - 1 - prec as i64;
    let e_bits = 64 - e.unsigned_abs().leading_zeros();
    let q = out_prec + 24 + e_bits;
    let shift = prec as i64 + e; // m = v / 2^shift
    let m = if shift >= 0 {
        let s = shift as u32;
        Interval::from_raw(rescale_floor(v, s, q), rescale_ceil(v, s, q), q)
    } else {
        Interval::from_int(&shl(v, (-shift) as u32), q)
    };
    let one = Interval::one(q);
    let z = (&m - &one).div(&(&m + &one))?;
    let z2 = z.sqr();
    let mut sum = z.clone();
    let mut zpow = z;
    let mut k: u64 = 1;
    let one_ulp = BigInt::one();
    while zpow.mag_scaled() > one_ulp {
        zpow = &zpow * &z2;
        sum = &sum + &zpow.div_uint(2 * k + 1);
        k += 1;
    }
    // z in [0, 1/3): the remaining tail is below zpow / 8 < 1 ulp
    let ln_m = Interval::from_raw(sum.lo.clone(), &sum.hi + 1, q).mul_pow2(1);
    let result = if e == 0 {
        ln_m
    } else {
        let ln2 = super::constants::enclose_constant(super::constants::Constant::Ln2, q)?;
        &ln_m + &ln2.mul_int(&BigInt::from(e))
    };
    Ok(result.round_to(out_prec))
}

/// Operations reachable through [`interval_fn`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum IntervalOp {
    Add,
    Sub,
    Mul,
    Div,
    Sqrt,
    Exp,
    Ln,
    PowInt(i64),
}

impl IntervalOp {
    fn arity(self) -> usize {
        match self {
            IntervalOp::Add | IntervalOp::Sub | IntervalOp::Mul | IntervalOp::Div => 2,
            _ => 1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            IntervalOp::Add => "add",
            IntervalOp::Sub => "sub",
            IntervalOp::Mul => "mul",
            IntervalOp::Div => "div",
            IntervalOp::Sqrt => "sqrt",
            IntervalOp::Exp => "exp",
            IntervalOp::Ln => "ln",
            IntervalOp::PowInt(_) => "pow_int",
        }
    }
}

/// Apply `op` and return the result on the grid `2^-precision`.
pub fn interval_fn(op: IntervalOp, args: &[Interval], precision: u32) -> Result<Interval> {
    interval_fn_with_budget(op, args, precision, DEFAULT_BIT_BUDGET)
}

pub fn interval_fn_with_budget(
    op: IntervalOp,
    args: &[Interval],
    precision: u32,
    budget: u64,
) -> Result<Interval> {
    if args.len() != op.arity() {
        return Err(Error::Domain(format!(
            "{} takes {} argument(s), got {}",
            op.name(),
            op.arity(),
            args.len()
        )));
    }
    let work = args.iter().map(|a| a.prec).max().unwrap_or(0).max(precision);
    let lift = |a: &Interval| a.round_to(work);
    let out = match op {
        IntervalOp::Add => lift(&args[0]) + lift(&args[1]),
        IntervalOp::Sub => lift(&args[0]) - lift(&args[1]),
        IntervalOp::Mul => lift(&args[0]) * lift(&args[1]),
        IntervalOp::Div => {
            if args[1].contains_zero() {
                return Err(Error::Domain(format!(
                    "div: argument 2 contains zero ({})",
                    args[1]
                )));
            }
            lift(&args[0]).div(&lift(&args[1]))?
        }
        IntervalOp::Sqrt => {
            if args[0].lo.is_negative() {
                return Err(Error::Domain(format!(
                    "sqrt: argument 1 has negative lower end ({})",
                    args[0]
                )));
            }
            lift(&args[0]).sqrt()?
        }
        IntervalOp::Exp => lift(&args[0]).exp()?,
        IntervalOp::Ln => {
            if !args[0].lo.is_positive() {
                return Err(Error::Domain(format!(
                    "ln: argument 1 is not strictly positive ({})",
                    args[0]
                )));
            }
            lift(&args[0]).ln()?
        }
        IntervalOp::PowInt(n) => lift(&args[0]).pow_int(n)?,
    };
    let out = out.round_to(precision);
    out.check_budget(budget)?;
    Ok(out)
}
