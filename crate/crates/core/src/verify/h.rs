//! Monotonicity of `H` on a grid and the truncated series quotient `J`.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;

use super::certificate::{sign_adaptively, Certificate, Outcome, PrecisionPolicy, Status, Witness};
use crate::coeff::CoefficientTable;
use crate::elliptic::{alpha, beta, h_value, minus_g4_prime_half};
use crate::error::{domain, Result};
use crate::exact::{Interval, PiExpression};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn policy_from(precision: u32) -> Result<PrecisionPolicy> {
    PrecisionPolicy::new(precision, precision.max(PrecisionPolicy::default().max_bits))
}

/// Whether the enclosure lies in `[lo, lo + 1/1000)`, i.e. its value reads
/// `lo` when truncated to three decimals.
fn reads_as(v: &Interval, lo: &BigRational) -> bool {
    v.lo() >= *lo && v.hi() < lo + rat(1, 1000)
}

pub fn h_monotonicity(grid: &[BigRational], precision: u32) -> Result<Certificate> {
    h_monotonicity_with(grid, &policy_from(precision)?)
}

/// Certify `H(x₁) > H(x₂)` for consecutive grid points `x₁ < x₂ < 1/2` and
/// `H(x₁) < H(x₂)` for `1/2 < x₁ < x₂`. Also checks that `α` and `β` read
/// `0.810` and `0.246` to three decimals and that `β` agrees with
/// `−G₄′(1/2) = H(1/2)`.
pub fn h_monotonicity_with(grid: &[BigRational], policy: &PrecisionPolicy) -> Result<Certificate> {
    let start = Instant::now();
    let half = rat(1, 2);
    for x in grid {
        if !x.is_positive() || x >= &BigRational::one() || x == &half {
            return domain(format!("grid point x = {x} must lie in (0, 1) \\ {{1/2}}"));
        }
    }
    let mut pts = grid.to_vec();
    pts.sort();
    pts.dedup();
    let (left, right): (Vec<_>, Vec<_>) = pts.into_iter().partition(|x| x < &half);
    let mut pairs: Vec<(BigRational, BigRational, bool)> = Vec::new();
    for w in left.windows(2) {
        pairs.push((w[0].clone(), w[1].clone(), true));
    }
    for w in right.windows(2) {
        pairs.push((w[0].clone(), w[1].clone(), false));
    }
    if pairs.is_empty() {
        return domain("need at least two grid points on one side of 1/2");
    }

    let outcomes: Vec<Outcome> = pairs
        .par_iter()
        .map(|(a, b, decreasing)| {
            sign_adaptively(policy, |p| {
                let d = &h_value(a, p)? - &h_value(b, p)?;
                Ok(if *decreasing { d } else { -d })
            })
        })
        .collect::<Result<_>>()?;

    let mut witnesses = Vec::new();
    let mut refuted = false;
    let mut undecided = false;
    let mut precision_used = 0;
    for ((a, b, dec), o) in pairs.iter().zip(&outcomes) {
        precision_used = precision_used.max(o.precision());
        let label = if *dec {
            format!("H({a}) - H({b})")
        } else {
            format!("H({b}) - H({a})")
        };
        let coords = vec![
            num_traits::ToPrimitive::to_f64(a).unwrap_or(f64::NAN),
            num_traits::ToPrimitive::to_f64(b).unwrap_or(f64::NAN),
        ];
        match o {
            Outcome::Holds(_) => {}
            Outcome::Zero => unreachable!("H differences are enclosures"),
            Outcome::Fails(_, v) => {
                refuted = true;
                witnesses.push(Witness::new(label, coords, v));
            }
            Outcome::Undecided(_, v) => {
                undecided = true;
                witnesses.push(Witness::new(label, coords, v));
            }
        }
    }

    let p = policy.start_bits.max(64);
    let a = alpha(p)?;
    let b = beta(p)?;
    let b2 = minus_g4_prime_half(p)?;
    let mut notes = vec![
        format!("alpha = e^(pi/2) - 4 = {}", a.to_decimal(25)),
        format!("beta = {}", b.to_decimal(25)),
        format!("-G4'(1/2) = {}", b2.to_decimal(25)),
    ];
    let mut constant_check = |ok: bool, what: &str, v: &Interval| {
        if !ok {
            refuted = true;
            witnesses.push(Witness::new(what.to_string(), vec![], v));
        }
    };
    constant_check(reads_as(&a, &rat(810, 1000)), "alpha reads 0.810", &a);
    constant_check(reads_as(&b, &rat(246, 1000)), "beta reads 0.246", &b);
    let agree = b.overlaps(&b2);
    constant_check(agree, "beta agrees with -G4'(1/2)", &(&b - &b2));
    notes.push(format!(
        "alpha reads 0.810: {}; beta reads 0.246: {}; beta = -G4'(1/2) within enclosures: {agree}",
        reads_as(&a, &rat(810, 1000)),
        reads_as(&b, &rat(246, 1000))
    ));

    let status = if refuted {
        Status::Refuted
    } else if undecided {
        Status::Undecided
    } else {
        Status::Certified
    };
    Ok(Certificate {
        claim: "H decreasing on (0, 1/2) and increasing on (1/2, 1)".into(),
        range: format!(
            "{} consecutive pairs ({} points below 1/2, {} above)",
            pairs.len(),
            left.len(),
            right.len()
        ),
        status,
        precision_used,
        checked: pairs.len(),
        witnesses,
        boundary: Vec::new(),
        scope: "consecutive grid pairs only".into(),
        notes,
        runtime_ms: Some(start.elapsed().as_millis() as u64),
    })
}

/// Coefficients `q_0, …, q_{N−1}` of `(Σ_{n≥1} b_n xⁿ) / (Σ_{n≥1} W_n xⁿ)`,
/// by exact long division.
pub fn j_quotient(n: usize, table: &mut CoefficientTable) -> Vec<PiExpression> {
    table.ensure_wallis(n + 1);
    let w1_inv = table.wallis(1).recip();
    let mut q: Vec<PiExpression> = Vec::with_capacity(n);
    for k in 0..n {
        let mut r = table.b(k + 1).clone();
        for (j, qj) in q.iter().enumerate() {
            let w = -table.wallis(k + 1 - j).clone();
            r.add_scaled_assign(qj, &w);
        }
        q.push(r.scale(&w1_inv));
    }
    q
}

/// Certify the first `n` quotient coefficients of `J` nonnegative.
pub fn j_truncation_check(n: usize, precision: u32) -> Result<Certificate> {
    let start = Instant::now();
    if n < 2 {
        return domain(format!("N must be at least 2, got {n}"));
    }
    let policy = policy_from(precision)?;
    let mut table = CoefficientTable::new();
    let q = j_quotient(n, &mut table);
    let outcomes: Vec<Outcome> = q
        .par_iter()
        .map(|c| {
            if c.is_zero() {
                Ok(Outcome::Zero)
            } else {
                sign_adaptively(&policy, |p| c.evaluate(p))
            }
        })
        .collect::<Result<_>>()?;
    let mut witnesses = Vec::new();
    let mut boundary = Vec::new();
    let mut refuted = false;
    let mut undecided = false;
    let mut precision_used = 0;
    for (k, o) in outcomes.iter().enumerate() {
        precision_used = precision_used.max(o.precision());
        match o {
            Outcome::Holds(_) => {}
            Outcome::Zero => boundary.push(format!("k = {k}")),
            Outcome::Fails(_, v) => {
                refuted = true;
                witnesses.push(Witness::new(format!("k = {k}"), vec![k as f64], v));
            }
            Outcome::Undecided(_, v) => {
                undecided = true;
                witnesses.push(Witness::new(format!("k = {k}"), vec![k as f64], v));
            }
        }
    }
    let status = if refuted {
        Status::Refuted
    } else if undecided {
        Status::Undecided
    } else {
        Status::Certified
    };
    Ok(Certificate {
        claim: "quotient coefficients of J = (e^K(sqrt x) - e^(pi/2)) / (1/sqrt(1-x) - 1) are >= 0".into(),
        range: format!("k in [0, {}]", n - 1),
        status,
        precision_used,
        checked: n,
        witnesses,
        boundary,
        scope: "truncation level only: the first N coefficients of the series quotient".into(),
        notes: Vec::new(),
        runtime_ms: Some(start.elapsed().as_millis() as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_quotient_coefficients() {
        let mut t = CoefficientTable::new();
        let q = j_quotient(2, &mut t);
        assert_eq!(q[0], PiExpression::new(vec![rat(0, 1), rat(1, 4)], true));
        assert_eq!(q[1], PiExpression::new(vec![rat(0, 1), rat(-3, 64), rat(1, 64)], true));
    }

    #[test]
    fn h_small_grid() {
        let grid: Vec<_> = [1, 2, 3, 4, 6, 7, 8, 9].iter().map(|&k| rat(k, 10)).collect();
        let c = h_monotonicity(&grid, 64).unwrap();
        assert_eq!(c.status, Status::Certified, "{c:?}");
        assert!(h_monotonicity(&[rat(1, 2)], 64).is_err());
    }

    #[test]
    fn j_small() {
        let c = j_truncation_check(10, 64).unwrap();
        assert_eq!(c.status, Status::Certified);
        assert!(j_truncation_check(1, 64).is_err());
    }
}
