//! The inequality families and their pointwise residuals.
//!
//! Every residual is oriented so that a certified positive value means the
//! claimed strict inequality holds at the point. Logarithmic bounds
//! `ln A < K` are checked in the exponentiated form `A < e^K`, together
//! with `A > 0` for lower bounds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::{CoefficientTable, PValue};
use crate::elliptic::{alpha_exact, beta, exp_k_agm, phi};
use crate::error::{domain, Error, Result};
use crate::exact::{enclose_constant, Constant, ExactValue, Interval, PiExpression, Sign};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    P1Lower,
    P1Upper,
    P2Lower,
    P2Upper,
    P3Lower,
    P3Upper,
    CP3Lower,
    CP3Upper,
    EkDiffLower,
    EkDiffUpper,
    Rmk4CompareQi,
    Rmk4CompareYi,
    M1Improvement,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::P1Lower,
        Family::P1Upper,
        Family::P2Lower,
        Family::P2Upper,
        Family::P3Lower,
        Family::P3Upper,
        Family::CP3Lower,
        Family::CP3Upper,
        Family::EkDiffLower,
        Family::EkDiffUpper,
        Family::Rmk4CompareQi,
        Family::Rmk4CompareYi,
        Family::M1Improvement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::P1Lower => "P1_lower",
            Family::P1Upper => "P1_upper",
            Family::P2Lower => "P2_lower",
            Family::P2Upper => "P2_upper",
            Family::P3Lower => "P3_lower",
            Family::P3Upper => "P3_upper",
            Family::CP3Lower => "CP3_lower",
            Family::CP3Upper => "CP3_upper",
            Family::EkDiffLower => "EKDIFF_lower",
            Family::EkDiffUpper => "EKDIFF_upper",
            Family::Rmk4CompareQi => "RMK4_compare_QI",
            Family::Rmk4CompareYi => "RMK4_compare_YI",
            Family::M1Improvement => "M1_improvement",
        }
    }

    /// Whether points are pairs `(x, y)`.
    pub fn two_variable(self) -> bool {
        matches!(
            self,
            Family::P3Lower | Family::P3Upper | Family::CP3Lower | Family::CP3Upper
        )
    }

    fn takes_m(self) -> bool {
        matches!(
            self,
            Family::P1Lower
                | Family::P1Upper
                | Family::P2Lower
                | Family::P2Upper
                | Family::P3Lower
                | Family::P3Upper
        )
    }

    fn takes_threshold(self) -> bool {
        !matches!(
            self,
            Family::P2Lower
                | Family::P2Upper
                | Family::Rmk4CompareQi
                | Family::Rmk4CompareYi
                | Family::M1Improvement
        )
    }

    fn is_p3(self) -> bool {
        self.two_variable()
    }

    /// Human-readable form of the oriented residual.
    fn statement(self) -> &'static str {
        match self {
            Family::P1Lower => "e^K(r) > p/r' + sum_{n<=m} c_n(p) r^2n",
            Family::P1Upper => "e^K(r) < q/r' + sum_{n<=m} c_n(q) r^2n",
            Family::P2Lower => "e^K(r) > 4/r' + sum_{n<=m} c_n r^2n - (sum_{n<=m} c_n) r^(2m+2)",
            Family::P2Upper => "e^K(r) < 4/r' + sum_{n<=m+1} c_n r^2n",
            Family::P3Lower | Family::CP3Lower => {
                "sigma * (E(x) + E(y) - [2E((x+y)/2) + p(...) + sum c_n(p)(...)]) > 0"
            }
            Family::P3Upper | Family::CP3Upper => {
                "sigma * ([E(x+y) + p(...) + sum c_n(p)(...)] - E(x) - E(y)) > 0"
            }
            Family::EkDiffLower => "sign(1-2r^2) * (Phi(r^2) - beta (1-2r^2)) > 0",
            Family::EkDiffUpper => "sign(1-2r^2) * (alpha (1-2r^2) - Phi(r^2)) > 0",
            Family::Rmk4CompareQi => "U_QI - U_new = (2 - pi e^(pi/2)/8) r^2 > 0",
            Family::Rmk4CompareYi => "U_YI - U_new > 0",
            Family::M1Improvement => "A_1(r) - A_0(r) > 0 (sharp m = 1 bound improves m = 0)",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::Domain(format!("unknown family `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

/// The constant `p` (or `q`, `α`, `β`) of a bound.
#[derive(Clone, Debug, PartialEq)]
pub enum Threshold {
    Exact(ExactValue),
    Enclosed(Interval),
    /// `β + shift`, where `β = 4√2 − Γ(3/4)²/√π · exp(Γ(1/4)²/(4√π))`.
    Beta { shift: BigRational },
}

impl Threshold {
    pub fn enclose(&self, precision: u32) -> Result<Interval> {
        match self {
            Threshold::Exact(v) => v.evaluate(precision),
            Threshold::Enclosed(i) => Ok(i.clone()),
            Threshold::Beta { shift } => Ok(beta(precision + 8)?.add_rational(shift).round_to(precision)),
        }
    }

    fn as_pvalue(&self, precision: u32) -> Result<PValue> {
        Ok(match self {
            Threshold::Exact(v) => PValue::Exact(v.clone()),
            other => PValue::Enclosed(other.enclose(precision)?),
        })
    }

    /// The threshold moved by `delta`.
    pub fn shifted(&self, delta: &BigRational) -> Threshold {
        match self {
            Threshold::Exact(v) => Threshold::Exact(v.add(&ExactValue::rational(delta.clone()))),
            Threshold::Enclosed(i) => Threshold::Enclosed(i.add_rational(delta)),
            Threshold::Beta { shift } => Threshold::Beta { shift: shift + delta },
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Threshold::Exact(v) => v.to_string(),
            Threshold::Enclosed(i) => i.to_decimal(30),
            Threshold::Beta { shift } if shift.is_zero() => "beta".into(),
            Threshold::Beta { shift } => format!("beta + ({shift})"),
        }
    }
}

impl From<ExactValue> for Threshold {
    fn from(v: ExactValue) -> Self {
        Threshold::Exact(v)
    }
}

impl From<PValue> for Threshold {
    fn from(v: PValue) -> Self {
        match v {
            PValue::Exact(e) => Threshold::Exact(e),
            PValue::Enclosed(i) => Threshold::Enclosed(i),
        }
    }
}

/// `b_2/W_2 = π(π+9)e^{π/2}/48`.
pub fn p3_threshold() -> ExactValue {
    ExactValue::from(PiExpression::new(vec![rat(0, 1), rat(9, 48), rat(1, 48)], true))
}

/// A family together with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundSpec {
    pub family: Family,
    pub m: usize,
    pub threshold: Option<Threshold>,
}

impl BoundSpec {
    pub fn new(family: Family, m: usize, threshold: Option<Threshold>) -> Result<Self> {
        if !family.takes_m() && m != 0 {
            return domain(format!("family {family} has no parameter m (got m = {m})"));
        }
        if family.takes_threshold() && threshold.is_none() {
            return domain(format!("family {family} requires a threshold p"));
        }
        if !family.takes_threshold() && threshold.is_some() {
            return domain(format!("family {family} takes no threshold p"));
        }
        let spec = BoundSpec {
            family,
            m,
            threshold,
        };
        if family.is_p3() {
            spec.orientation()?;
        }
        Ok(spec)
    }

    /// The family with its best constant: `b_{m+1}/W_{m+1}` for P1 lower
    /// bounds, `4` for P1 upper bounds, `b_2/W_2` for P3 and its corollary,
    /// `β` and `α` for the EKDIFF bounds.
    pub fn sharp(family: Family, m: usize, table: &mut CoefficientTable) -> Result<Self> {
        let threshold = match family {
            Family::P1Lower => Some(Threshold::Exact(table.ratio_exact(m + 1).into())),
            Family::P1Upper => Some(Threshold::Exact(ExactValue::from_integer(4))),
            Family::P3Lower | Family::P3Upper | Family::CP3Lower | Family::CP3Upper => {
                Some(Threshold::Exact(p3_threshold()))
            }
            Family::EkDiffLower => Some(Threshold::Beta {
                shift: BigRational::zero(),
            }),
            Family::EkDiffUpper => Some(Threshold::Exact(alpha_exact())),
            _ => None,
        };
        BoundSpec::new(family, m, threshold)
    }

    pub fn describe(&self) -> String {
        let mut s = self.family.name().to_string();
        if self.family.takes_m() {
            s.push_str(&format!(", m = {}", self.m));
        }
        if let Some(t) = &self.threshold {
            let name = match self.family {
                Family::P1Upper => "q",
                Family::EkDiffLower => "beta'",
                Family::EkDiffUpper => "alpha'",
                _ => "p",
            };
            s.push_str(&format!(", {name} = {}", t.describe()));
        }
        s.push_str(": ");
        s.push_str(self.family.statement());
        s
    }

    /// `+1` for `p ≤ b_2/W_2`, `−1` for `p ≥ 4` (the reversed inequality).
    pub fn orientation(&self) -> Result<i32> {
        if !self.family.is_p3() {
            return Ok(1);
        }
        let t = self.threshold.as_ref().expect("P3 specs carry a threshold");
        let four = BigRational::from_integer(BigInt::from(4));
        if let Threshold::Exact(v) = t {
            let d = v.sub(&p3_threshold());
            if d.is_zero() {
                return Ok(1);
            }
            if v.as_rational().map(|q| q >= four).unwrap_or(false) {
                return Ok(-1);
            }
            let d = d.evaluate(256)?;
            if d.sign() == Sign::Negative {
                return Ok(1);
            }
        }
        let e = t.enclose(256)?;
        if e.lo() >= four {
            return Ok(-1);
        }
        if (&e - &p3_threshold().evaluate(256)?).sign() == Sign::Negative {
            return Ok(1);
        }
        domain(format!(
            "family {} is only stated for p ≤ π(π+9)e^(π/2)/48 or p ≥ 4, got p = {}",
            self.family,
            t.describe()
        ))
    }
}

/// A grid point: `x = r²` for single-variable families, `(x, y)` for P3.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GridPoint {
    X(BigRational),
    XY(BigRational, BigRational),
}

impl GridPoint {
    pub fn describe(&self) -> String {
        match self {
            GridPoint::X(x) => format!("x = {x}"),
            GridPoint::XY(x, y) => format!("(x, y) = ({x}, {y})"),
        }
    }

    pub fn coords(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        match self {
            GridPoint::X(x) => vec![x.to_f64().unwrap_or(f64::NAN)],
            GridPoint::XY(x, y) => vec![x.to_f64().unwrap_or(f64::NAN), y.to_f64().unwrap_or(f64::NAN)],
        }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn in_open_unit(x: &BigRational) -> bool {
    x.is_positive() && x < &BigRational::one()
}

/// Check that `point` lies in the domain of `family`.
pub fn check_point(family: Family, point: &GridPoint) -> Result<()> {
    let bad = |why: &str| domain(format!("grid point {point} is outside the domain of {family}: {why}"));
    match (family.two_variable(), point) {
        (false, GridPoint::X(x)) => {
            if !in_open_unit(x) {
                return bad("x = r² must lie in (0, 1)");
            }
            if matches!(family, Family::EkDiffLower | Family::EkDiffUpper) && x == &rat(1, 2) {
                return bad("x = 1/2 is excluded (both sides vanish)");
            }
            Ok(())
        }
        (true, GridPoint::XY(x, y)) => {
            if !in_open_unit(x) || !in_open_unit(y) || !in_open_unit(&(x + y)) {
                return bad("x, y and x + y must lie in (0, 1)");
            }
            if matches!(family, Family::P3Lower | Family::CP3Lower) && x == y {
                return bad("the lower bound is an identity at x = y");
            }
            Ok(())
        }
        (false, _) => bad("expected a single coordinate x"),
        (true, _) => bad("expected a pair (x, y)"),
    }
}

fn pow(x: &BigRational, n: usize) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..n {
        r *= x;
    }
    r
}

/// Per-precision data shared by every point of one spec.
pub(crate) struct Evaluator {
    family: Family,
    m: usize,
    q: u32,
    sigma: i32,
    threshold: Option<Interval>,
    coeffs: Vec<Interval>,
}

impl Evaluator {
    /// Prepare to evaluate at output precision `precision`. Needs the table
    /// mutably, so this runs before the parallel fan-out over points.
    pub(crate) fn new(spec: &BoundSpec, precision: u32, table: &mut CoefficientTable) -> Result<Self> {
        let q = precision + 32;
        let threshold = spec.threshold.as_ref().map(|t| t.enclose(q)).transpose()?;
        let n_coeffs = match spec.family {
            Family::P1Lower | Family::P1Upper | Family::P3Lower | Family::P3Upper => spec.m + 1,
            Family::CP3Lower | Family::CP3Upper => 1,
            Family::P2Lower => spec.m + 1,
            Family::P2Upper => spec.m + 2,
            _ => 0,
        };
        let pv = match spec.family {
            Family::P2Lower | Family::P2Upper => Some(PValue::Exact(ExactValue::from_integer(4))),
            _ if n_coeffs > 0 => Some(spec.threshold.as_ref().expect("threshold").as_pvalue(q)?),
            _ => None,
        };
        let coeffs = match pv {
            Some(pv) => (0..n_coeffs)
                .map(|n| table.c_coeff(n, &pv, q))
                .collect::<Result<_>>()?,
            None => Vec::new(),
        };
        Ok(Evaluator {
            family: spec.family,
            m: spec.m,
            q,
            sigma: spec.orientation()?,
            threshold,
            coeffs,
        })
    }

    /// The oriented quantities that must all be positive at `point`.
    pub(crate) fn residuals(&self, point: &GridPoint) -> Result<Vec<Interval>> {
        check_point(self.family, point)?;
        let q = self.q;
        match point {
            GridPoint::X(x) => self.single(x, q),
            GridPoint::XY(x, y) => Ok(vec![self.pair(x, y, q)?]),
        }
    }

    fn poly(&self, x: &BigRational, upto: usize, q: u32) -> Interval {
        let mut s = Interval::zero(q);
        for n in 0..upto {
            s = &s + &self.coeffs[n].mul_rational(&pow(x, n));
        }
        s
    }

    fn inv_sqrt_1m(x: &BigRational, q: u32) -> Result<Interval> {
        Interval::from_rational(&(BigRational::one() - x), q).sqrt()?.recip()
    }

    fn single(&self, x: &BigRational, q: u32) -> Result<Vec<Interval>> {
        let inv_s = || Self::inv_sqrt_1m(x, q);
        let four = || Interval::from_i64(4, q);
        let e = || exp_k_agm(x, q);
        let th = || self.threshold.clone().expect("threshold");
        Ok(match self.family {
            Family::P1Lower => {
                let a = &(&th() * &inv_s()?) + &self.poly(x, self.m + 1, q);
                vec![a.clone(), &e()? - &a]
            }
            Family::P1Upper => {
                let a = &(&th() * &inv_s()?) + &self.poly(x, self.m + 1, q);
                vec![&a - &e()?]
            }
            Family::P2Lower => {
                let total = self.coeffs.iter().fold(Interval::zero(q), |s, c| &s + c);
                let a = &(&(&four() * &inv_s()?) + &self.poly(x, self.m + 1, q))
                    - &total.mul_rational(&pow(x, self.m + 1));
                vec![a.clone(), &e()? - &a]
            }
            Family::P2Upper => {
                let a = &(&four() * &inv_s()?) + &self.poly(x, self.m + 2, q);
                vec![&a - &e()?]
            }
            Family::EkDiffLower | Family::EkDiffUpper => {
                let d = BigRational::one() - x * rat(2, 1);
                let sign = if d.is_positive() { 1 } else { -1 };
                let f = phi(x, q)?;
                let bound = th().mul_rational(&d);
                let r = if self.family == Family::EkDiffLower {
                    &f - &bound
                } else {
                    &bound - &f
                };
                vec![if sign > 0 { r } else { -r }]
            }
            Family::Rmk4CompareQi => vec![rmk4_gap(q)?.mul_rational(x)],
            Family::Rmk4CompareYi => {
                let s = Interval::from_rational(&(BigRational::one() - x), q).sqrt()?;
                let e = enclose_constant(Constant::ExpHalfPi, q)?;
                let pi = enclose_constant(Constant::Pi, q)?;
                let u_yi = &(&(&(&pi + &four()) * &e).mul_pow2(-3)).div(&s)?
                    + &(&(&(&Interval::one(q).mul_pow2(-1) - &pi.mul_pow2(-3)) * &e) * &s);
                let u_new = &(&four().div(&s)? + &(&e - &four())) - &rmk4_gap(q)?.mul_rational(x);
                vec![&u_yi - &u_new]
            }
            Family::M1Improvement => vec![m1_difference(x, q)?],
            _ => unreachable!("two-variable families take pairs"),
        })
    }

    fn pair(&self, x: &BigRational, y: &BigRational, q: u32) -> Result<Interval> {
        let p = self.threshold.clone().expect("threshold");
        let ex = exp_k_agm(x, q)?;
        let ey = exp_k_agm(y, q)?;
        let ix = Self::inv_sqrt_1m(x, q)?;
        let iy = Self::inv_sqrt_1m(y, q)?;
        let lhs = &ex + &ey;
        let r = match self.family {
            Family::P3Lower | Family::CP3Lower => {
                let z = (x + y) * rat(1, 2);
                let ez = exp_k_agm(&z, q)?;
                let iz = Self::inv_sqrt_1m(&z, q)?;
                let mut bound = &ez.mul_pow2(1) + &(&p * &(&(&ix + &iy) - &iz.mul_pow2(1)));
                for (n, c) in self.coeffs.iter().enumerate() {
                    let w = pow(x, n) + pow(y, n) - pow(&z, n) * rat(2, 1);
                    bound = &bound + &c.mul_rational(&w);
                }
                &lhs - &bound
            }
            Family::P3Upper | Family::CP3Upper => {
                let s = x + y;
                let es = exp_k_agm(&s, q)?;
                let is = Self::inv_sqrt_1m(&s, q)?;
                let mut bound = &es + &(&p * &(&(&ix + &iy) - &is));
                for (n, c) in self.coeffs.iter().enumerate() {
                    let w = pow(x, n) + pow(y, n) - pow(&s, n);
                    bound = &bound + &c.mul_rational(&w);
                }
                &bound - &lhs
            }
            _ => unreachable!("single-variable families take x"),
        };
        Ok(if self.sigma > 0 { r } else { -r })
    }
}

/// `2 − π e^{π/2}/8`.
fn rmk4_gap(q: u32) -> Result<Interval> {
    let v = ExactValue::new(
        PiExpression::from_integer(2),
        PiExpression::new(vec![rat(0, 1), rat(-1, 8)], true),
    );
    v.evaluate(q)
}

/// `A_1 − A_0` with `A_1 = e^{π/2} − p₂ − (p₂/2 − πe^{π/2}/8)x + p₂/r′` and
/// `A_0 = e^{π/2} − p₁ + p₁/r′`, `p₁ = b_1/W_1`, `p₂ = b_2/W_2`.
fn m1_difference(x: &BigRational, q: u32) -> Result<Interval> {
    let p1 = ExactValue::from(PiExpression::new(vec![rat(0, 1), rat(1, 4)], true));
    let p2 = p3_threshold();
    let pie8 = ExactValue::from(PiExpression::new(vec![rat(0, 1), rat(1, 8)], true));
    // e − p₂ − (p₂/2 − πe/8)x − (e − p₁), exactly
    let poly = p1
        .sub(&p2)
        .sub(&p2.scale(&rat(1, 2)).sub(&pie8).scale(x))
        .evaluate(q)?;
    let inv_s = Interval::from_rational(&(BigRational::one() - x), q).sqrt()?.recip()?;
    let coef = p2.sub(&p1).evaluate(q)?;
    Ok(&poly + &(&coef * &inv_s))
}

/// `(A_1 − A_0) − π(π−3)e^{π/2}/96 · x²(x+3)/(r′(2 + (x+2)r′))`, which
/// should enclose zero.
pub fn m1_identity_residual(x: &BigRational, precision: u32) -> Result<Interval> {
    if !in_open_unit(x) {
        return domain(format!("x = {x} must lie in (0, 1)"));
    }
    let q = precision + 32;
    let diff = m1_difference(x, q)?;
    let c = ExactValue::from(PiExpression::new(vec![rat(0, 1), rat(-3, 96), rat(1, 96)], true)).evaluate(q)?;
    let s = Interval::from_rational(&(BigRational::one() - x), q).sqrt()?;
    let den = &s * &s.mul_rational(&(x + rat(2, 1))).add_rational(&rat(2, 1));
    let num = x * x * (x + rat(3, 1));
    let rhs = (&c * &Interval::from_rational(&num, q)).div(&den)?;
    Ok((&diff - &rhs).round_to(precision))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sign_all(v: &[Interval]) -> Sign {
        if v.iter().any(|i| i.sign() == Sign::Negative) {
            Sign::Negative
        } else if v.iter().all(|i| i.sign() == Sign::Positive) {
            Sign::Positive
        } else {
            Sign::Undecided
        }
    }

    #[test]
    fn p1_sharp_holds_at_a_point() {
        let mut t = CoefficientTable::new();
        for fam in [Family::P1Lower, Family::P1Upper] {
            let spec = BoundSpec::sharp(fam, 0, &mut t).unwrap();
            let ev = Evaluator::new(&spec, 128, &mut t).unwrap();
            let r = ev.residuals(&GridPoint::X(rat(1, 4))).unwrap();
            assert_eq!(sign_all(&r), Sign::Positive, "{fam}");
        }
    }

    #[test]
    fn ekdiff_both_halves() {
        let mut t = CoefficientTable::new();
        for fam in [Family::EkDiffLower, Family::EkDiffUpper] {
            let spec = BoundSpec::sharp(fam, 0, &mut t).unwrap();
            let ev = Evaluator::new(&spec, 128, &mut t).unwrap();
            for x in [rat(1, 10), rat(9, 10)] {
                let r = ev.residuals(&GridPoint::X(x)).unwrap();
                assert_eq!(sign_all(&r), Sign::Positive, "{fam}");
            }
        }
    }

    #[test]
    fn p3_orientation_and_domain() {
        let p4 = Threshold::Exact(ExactValue::from_integer(4));
        assert_eq!(BoundSpec::new(Family::CP3Lower, 0, Some(p4)).unwrap().orientation().unwrap(), -1);
        let mid = Threshold::Exact(ExactValue::from_integer(3));
        assert!(BoundSpec::new(Family::P3Lower, 0, Some(mid)).is_ok());
        let between = Threshold::Exact(ExactValue::rational(rat(39, 10)));
        assert!(BoundSpec::new(Family::P3Lower, 0, Some(between)).is_err());
        assert!(BoundSpec::new(Family::CP3Lower, 1, Some(Threshold::Exact(p3_threshold()))).is_err());
        assert!(check_point(Family::P3Lower, &GridPoint::XY(rat(1, 2), rat(1, 2))).is_err());
        assert!(check_point(Family::P1Lower, &GridPoint::X(rat(1, 1))).is_err());
        assert!(check_point(Family::EkDiffUpper, &GridPoint::X(rat(1, 2))).is_err());
    }

    #[test]
    fn m1_identity_holds() {
        for x in [rat(1, 100), rat(1, 2), rat(99, 100)] {
            assert!(m1_identity_residual(&x, 128).unwrap().contains_zero());
        }
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
    }
}
