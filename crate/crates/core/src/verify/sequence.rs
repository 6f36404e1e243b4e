//! Sign and monotonicity certificates for the coefficient sequences.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::certificate::{sign_adaptively, Certificate, Outcome, PrecisionPolicy, Status, Witness};
use crate::coeff::{CoefficientTable, PValue};
use crate::error::{domain, Error, Result};
use crate::exact::{enclose_constant, Constant, ExactValue, Interval, PiExpression};

/// Expected sign of `c_n(p)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Expect {
    NonNegative,
    NonPositive,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Claim {
    /// `u_0, u_1 > 0` and `u_n < 0` for `n ≥ 2`.
    USigns,
    /// `v_n > 0`.
    VPositive,
    /// `v_n < v_{n−1}` for `n ≥ 2`.
    VDecreasing,
    /// `(n+1) b_{n+1} − (n+1/2) b_n > 0` for `n ≥ 1`.
    RatioIncreasing,
    /// `b_n / W_n < 4` for `n ≥ 1`.
    RatioBelow4,
    /// `c_n(p) ≥ 0` or `c_n(p) ≤ 0`.
    CSign { p: PValue, expect: Expect },
}

impl Claim {
    pub fn name(&self) -> String {
        match self {
            Claim::USigns => "u_signs".into(),
            Claim::VPositive => "v_positive".into(),
            Claim::VDecreasing => "v_decreasing".into(),
            Claim::RatioIncreasing => "ratio_increasing".into(),
            Claim::RatioBelow4 => "ratio_below_4".into(),
            Claim::CSign { p, expect } => {
                let p = match p {
                    PValue::Exact(v) => v.to_string(),
                    PValue::Enclosed(i) => i.to_decimal(20),
                };
                let rel = match expect {
                    Expect::NonNegative => ">= 0",
                    Expect::NonPositive => "<= 0",
                };
                format!("c_sign(p = {p}): c_n(p) {rel}")
            }
        }
    }

    /// Parse a claim name. `c_sign` infers the expected sign from `p`
    /// (`p ≥ 4` ⇒ nonpositive, `p < 4` ⇒ nonnegative); `c_nonneg` and
    /// `c_nonpos` state it explicitly.
    pub fn parse(name: &str, p: Option<PValue>) -> Result<Claim> {
        let need_p = || {
            p.clone()
                .ok_or_else(|| Error::Domain(format!("claim `{name}` requires a value for p")))
        };
        Ok(match name {
            "u_signs" => Claim::USigns,
            "v_positive" => Claim::VPositive,
            "v_decreasing" => Claim::VDecreasing,
            "ratio_increasing" => Claim::RatioIncreasing,
            "ratio_below_4" => Claim::RatioBelow4,
            "c_nonneg" => Claim::CSign {
                p: need_p()?,
                expect: Expect::NonNegative,
            },
            "c_nonpos" => Claim::CSign {
                p: need_p()?,
                expect: Expect::NonPositive,
            },
            "c_sign" => {
                let p = need_p()?;
                let expect = infer_expect(&p)?;
                Claim::CSign { p, expect }
            }
            other => {
                return Err(Error::Domain(format!(
                    "unknown claim `{other}` (expected one of {})",
                    CLAIM_NAMES.join(", ")
                )))
            }
        })
    }

    fn strict(&self) -> bool {
        !matches!(self, Claim::CSign { .. })
    }

    /// Smallest index the claim is stated for.
    pub fn min_index(&self) -> usize {
        match self {
            Claim::VDecreasing => 2,
            Claim::RatioIncreasing | Claim::RatioBelow4 => 1,
            _ => 0,
        }
    }
}

pub const CLAIM_NAMES: [&str; 8] = [
    "u_signs",
    "v_positive",
    "v_decreasing",
    "ratio_increasing",
    "ratio_below_4",
    "c_sign",
    "c_nonneg",
    "c_nonpos",
];

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn infer_expect(p: &PValue) -> Result<Expect> {
    let four = BigRational::from_integer(BigInt::from(4));
    if let PValue::Exact(v) = p {
        if v.as_rational().as_ref() == Some(&four) {
            return Ok(Expect::NonPositive);
        }
    }
    let e = p.enclose(128)?;
    if e.lo() >= four {
        Ok(Expect::NonPositive)
    } else if e.hi() < four {
        Ok(Expect::NonNegative)
    } else {
        domain("cannot infer the sign of c_n(p) for p this close to 4; use c_nonneg or c_nonpos")
    }
}

/// How the claimed quantity at one index is obtained.
enum Item {
    Exact(ExactValue),
    Recurrence,
}

/// Certify `claim` for every index in `lo..=hi`.
///
/// Exact π-polynomial values are used for `u_n`, `v_n`, and for `b_n`
/// up to the table's exact limit; larger indices use the interval
/// recurrence. Precision doubles per index until the sign is decided.
pub fn certify_sequence(
    claim: &Claim,
    lo: usize,
    hi: usize,
    policy: &PrecisionPolicy,
    table: &mut CoefficientTable,
) -> Result<Certificate> {
    let start = Instant::now();
    if lo > hi {
        return domain(format!("empty index range [{lo}, {hi}]"));
    }
    if lo < claim.min_index() {
        return domain(format!(
            "claim {} is only stated for n ≥ {}, got lower index {lo}",
            claim.name(),
            claim.min_index()
        ));
    }
    let needs_b = matches!(
        claim,
        Claim::RatioIncreasing | Claim::RatioBelow4 | Claim::CSign { .. }
    );
    if needs_b {
        table.prepare(hi + 1, policy.start_bits)?;
    }
    let limit = table.exact_limit();

    let items: Vec<(usize, Item)> = (lo..=hi)
        .map(|n| {
            let item = match claim {
                Claim::USigns => {
                    let u = ExactValue::from(table.u(n).clone());
                    Item::Exact(if n <= 1 { u } else { u.neg() })
                }
                Claim::VPositive => Item::Exact(ExactValue::from(table.v(n).clone())),
                Claim::VDecreasing => Item::Exact(ExactValue::from(table.u(n).clone()).neg()),
                Claim::RatioIncreasing if n < limit => {
                    Item::Exact(ExactValue::from(table.step_difference_exact(n)))
                }
                Claim::RatioBelow4 if n <= limit => {
                    let four_w = table.wallis(n) * BigRational::from_integer(BigInt::from(4));
                    let b = table.b(n).clone();
                    Item::Exact(ExactValue::new(PiExpression::constant(four_w, false), b.neg()))
                }
                Claim::CSign {
                    p: PValue::Exact(p),
                    expect,
                } if n <= limit => {
                    let c = table.c_exact(n, p);
                    Item::Exact(match expect {
                        Expect::NonNegative => c,
                        Expect::NonPositive => c.neg(),
                    })
                }
                _ => Item::Recurrence,
            };
            (n, item)
        })
        .collect();

    let mut outcomes: Vec<(usize, Outcome)> = items
        .par_iter()
        .filter_map(|(n, item)| match item {
            Item::Exact(v) if v.is_zero() => Some(Ok((*n, Outcome::Zero))),
            Item::Exact(v) => Some(sign_adaptively(policy, |p| v.evaluate(p)).map(|o| (*n, o))),
            Item::Recurrence => None,
        })
        .collect::<Result<_>>()?;

    let mut pending: Vec<usize> = items
        .iter()
        .filter(|(_, i)| matches!(i, Item::Recurrence))
        .map(|(n, _)| *n)
        .collect();
    let mut last: Vec<(usize, Interval, u32)> = Vec::new();
    for p in policy.schedule() {
        if pending.is_empty() {
            break;
        }
        table.ensure_wallis(hi + 1);
        let pv = match claim {
            Claim::CSign { p: pv, .. } => Some(pv.enclose(p + 64)?),
            _ => None,
        };
        let enc = table.enclosure(hi + 1, p)?.clone();
        let e = enclose_constant(Constant::ExpHalfPi, enc.precision())?;
        let w = table.wallis_slice();
        let values: Vec<(usize, Interval)> = pending
            .par_iter()
            .map(|&n| {
                let beta_e = enc.beta(n) * &e;
                let v = match claim {
                    Claim::RatioIncreasing => &enc.step_difference(n)? * &e,
                    Claim::RatioBelow4 => {
                        &Interval::from_rational(&(&w[n] * BigRational::from_integer(BigInt::from(4))), enc.precision())
                            - &beta_e
                    }
                    Claim::CSign { expect, .. } => {
                        let c = &beta_e - &pv.as_ref().expect("p enclosed").mul_rational(&w[n]);
                        match expect {
                            Expect::NonNegative => c,
                            Expect::NonPositive => -c,
                        }
                    }
                    _ => unreachable!("exact claims have no recurrence items"),
                };
                Ok((n, v.round_to(p)))
            })
            .collect::<Result<_>>()?;
        pending.clear();
        last.clear();
        for (n, v) in values {
            match v.sign() {
                crate::exact::Sign::Positive => outcomes.push((n, Outcome::Holds(p))),
                crate::exact::Sign::Negative => outcomes.push((n, Outcome::Fails(p, v))),
                crate::exact::Sign::Undecided => {
                    pending.push(n);
                    last.push((n, v, p));
                }
            }
        }
    }
    for (n, v, p) in last {
        outcomes.push((n, Outcome::Undecided(p, v)));
    }
    outcomes.sort_by_key(|(n, _)| *n);

    let mut cert = assemble(claim, lo, hi, &outcomes);
    cert.scope = format!(
        "every index in [{lo}, {hi}]; exact π-polynomial values for n ≤ {limit} (u_n, v_n at all n), \
         rigorous interval recurrence beyond"
    );
    if matches!(claim, Claim::RatioBelow4 | Claim::RatioIncreasing) && cert.status == Status::Certified {
        let r = table.ratio(hi, 64)?;
        let gap = 4.0 - r.to_f64();
        cert.notes.push(format!("observed gap 4 - b_n/W_n at n = {hi}: {gap:.6e}"));
    }
    cert.runtime_ms = Some(start.elapsed().as_millis() as u64);
    Ok(cert)
}

fn assemble(claim: &Claim, lo: usize, hi: usize, outcomes: &[(usize, Outcome)]) -> Certificate {
    let mut witnesses = Vec::new();
    let mut boundary = Vec::new();
    let mut refuted = false;
    let mut undecided = false;
    let mut precision_used = 0;
    for (n, o) in outcomes {
        precision_used = precision_used.max(o.precision());
        match o {
            Outcome::Holds(_) => {}
            Outcome::Zero => {
                boundary.push(format!("n = {n}"));
                if claim.strict() {
                    refuted = true;
                    witnesses.push(Witness::new(format!("n = {n}"), vec![*n as f64], &Interval::zero(8)));
                }
            }
            Outcome::Fails(_, v) => {
                refuted = true;
                witnesses.push(Witness::new(format!("n = {n}"), vec![*n as f64], v));
            }
            Outcome::Undecided(_, v) => {
                undecided = true;
                witnesses.push(Witness::new(format!("n = {n}"), vec![*n as f64], v));
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
    Certificate {
        claim: claim.name(),
        range: format!("n in [{lo}, {hi}]"),
        status,
        precision_used,
        checked: outcomes.len(),
        witnesses,
        boundary,
        scope: String::new(),
        notes: Vec::new(),
        runtime_ms: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u_signs_small_range() {
        let mut t = CoefficientTable::new();
        let c = certify_sequence(&Claim::USigns, 0, 40, &PrecisionPolicy::new(64, 1024).unwrap(), &mut t).unwrap();
        assert_eq!(c.status, Status::Certified, "{c:?}");
    }

    #[test]
    fn threshold_zero_is_boundary() {
        let mut t = CoefficientTable::new();
        let p = PValue::Exact(PiExpression::exp_half_pi().into());
        let claim = Claim::CSign {
            p,
            expect: Expect::NonPositive,
        };
        let c = certify_sequence(&claim, 0, 0, &PrecisionPolicy::fixed(64), &mut t).unwrap();
        assert_eq!(c.status, Status::Certified);
        assert_eq!(c.boundary, vec!["n = 0".to_string()]);
    }

    #[test]
    fn wrong_claim_is_refuted() {
        let mut t = CoefficientTable::new();
        let p = PValue::Exact(ExactValue::from_integer(4));
        let claim = Claim::CSign {
            p,
            expect: Expect::NonNegative,
        };
        let c = certify_sequence(&claim, 1, 5, &PrecisionPolicy::fixed(64), &mut t).unwrap();
        assert_eq!(c.status, Status::Refuted);
        assert_eq!(c.witnesses.len(), 5);
    }

    #[test]
    fn recurrence_path_matches() {
        let mut t = CoefficientTable::with_exact_limit(10);
        let c = certify_sequence(&Claim::RatioIncreasing, 1, 200, &PrecisionPolicy::default(), &mut t).unwrap();
        assert_eq!(c.status, Status::Certified);
    }

    #[test]
    fn index_domain() {
        let mut t = CoefficientTable::new();
        assert!(certify_sequence(&Claim::RatioIncreasing, 0, 3, &PrecisionPolicy::default(), &mut t).is_err());
        assert!(certify_sequence(&Claim::USigns, 3, 2, &PrecisionPolicy::default(), &mut t).is_err());
        assert!(Claim::parse("nope", None).is_err());
        assert!(Claim::parse("c_sign", None).is_err());
    }
}
