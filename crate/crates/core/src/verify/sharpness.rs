//! Sharpness probes: perturb a best constant into the invalid direction and
//! search for a point where the inequality then fails.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::bounds::{BoundSpec, Evaluator, Family, GridPoint};
use super::certificate::{Certificate, PrecisionPolicy, Status, Witness};
use crate::coeff::CoefficientTable;
use crate::error::{domain, Error, Result};
use crate::exact::{Interval, Sign};

/// Number of points on each dyadic search path.
pub const SEARCH_STEPS: u32 = 40;

fn pow2_inv(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k as usize)
}

/// Shift of the constant that should break the inequality, and the
/// dyadic path toward the endpoint where it breaks.
fn plan(spec: &BoundSpec, epsilon: &BigRational) -> Result<(BigRational, Vec<GridPoint>, &'static str)> {
    let steps = 1..=SEARCH_STEPS;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Ok(match spec.family {
        Family::P1Lower => (
            epsilon.clone(),
            steps.map(|k| GridPoint::X(pow2_inv(2 * k))).collect(),
            "x = 4^-k toward r = 0",
        ),
        Family::P1Upper => (
            -epsilon,
            steps.map(|k| GridPoint::X(BigRational::one() - pow2_inv(k))).collect(),
            "x = 1 - 2^-k toward r = 1",
        ),
        Family::EkDiffUpper => (
            -epsilon,
            steps.map(|k| GridPoint::X(pow2_inv(2 * k))).collect(),
            "x = 4^-k toward r = 0",
        ),
        Family::EkDiffLower => (
            epsilon.clone(),
            steps.map(|k| GridPoint::X(&half - pow2_inv(k + 1))).collect(),
            "x = 1/2 - 2^-k toward r = 1/sqrt(2)",
        ),
        Family::P3Lower | Family::P3Upper | Family::CP3Lower | Family::CP3Upper => {
            if spec.orientation()? < 0 {
                return Err(Error::Unsupported(format!(
                    "sharpness probe for the reversed {} inequality",
                    spec.family
                )));
            }
            (
                epsilon.clone(),
                steps
                    .map(|k| GridPoint::XY(pow2_inv(k + 1), pow2_inv(k)))
                    .collect(),
                "(x, y) = (2^-(k+1), 2^-k) toward the origin",
            )
        }
        other => {
            return Err(Error::Unsupported(format!(
                "sharpness probe for family {other}"
            )))
        }
    })
}

/// Perturb the spec's constant by `epsilon` in the invalid direction
/// (`p + ε` for lower bounds, `q − ε` for upper bounds) and scan a dyadic
/// path toward the relevant endpoint. Returns `Refuted` with the first
/// point where the perturbed inequality certifiably fails.
pub fn sharpness_probe(
    spec: &BoundSpec,
    epsilon: &BigRational,
    policy: &PrecisionPolicy,
) -> Result<Certificate> {
    let start = Instant::now();
    if !epsilon.is_positive() {
        return domain(format!("epsilon must be positive, got {epsilon}"));
    }
    let (shift, path, path_desc) = plan(spec, epsilon)?;
    let perturbed = BoundSpec {
        threshold: spec.threshold.as_ref().map(|t| t.shifted(&shift)),
        ..spec.clone()
    };
    let mut table = CoefficientTable::new();
    let mut evaluators: Vec<(u32, Evaluator)> = Vec::new();
    let mut searched: Vec<(GridPoint, Interval)> = Vec::new();
    let mut witness = None;
    let mut precision_used = 0;
    'points: for point in &path {
        let mut last = None;
        for (i, p) in policy.schedule().enumerate() {
            if evaluators.len() <= i {
                evaluators.push((p, Evaluator::new(&perturbed, p, &mut table)?));
            }
            let rs = evaluators[i].1.residuals(point)?;
            precision_used = precision_used.max(p);
            if let Some(neg) = rs.iter().find(|r| r.sign() == Sign::Negative) {
                witness = Some((point.clone(), neg.round_to(p)));
                break 'points;
            }
            let undecided = rs.iter().find(|r| r.sign() == Sign::Undecided);
            last = Some(undecided.unwrap_or(&rs[0]).round_to(p));
            if undecided.is_none() {
                break;
            }
        }
        searched.push((point.clone(), last.expect("schedule is non-empty")));
    }
    let sign = if shift.is_positive() { "+" } else { "-" };
    let claim = format!(
        "{} fails with the constant moved to {} {sign} {epsilon}",
        spec.family,
        spec.threshold.as_ref().map(|t| t.describe()).unwrap_or_default(),
    );
    let (status, witnesses, notes) = match witness {
        Some((pt, v)) => (
            Status::Refuted,
            vec![Witness::new(pt.describe(), pt.coords(), &v)],
            vec![format!("witness found after {} step(s)", searched.len() + 1)],
        ),
        None => (
            Status::Undecided,
            searched
                .iter()
                .map(|(pt, v)| Witness::new(pt.describe(), pt.coords(), v))
                .collect(),
            vec!["no failing point found on the search path".to_string()],
        ),
    };
    Ok(Certificate {
        claim,
        range: format!("{} points on {path_desc}", path.len()),
        status,
        precision_used,
        checked: searched.len() + usize::from(status == Status::Refuted),
        witnesses,
        boundary: Vec::new(),
        scope: "necessity of the constant is demonstrated by a concrete failing point, not by a limit proof"
            .into(),
        notes,
        runtime_ms: Some(start.elapsed().as_millis() as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn p1_lower_refuted_near_zero() {
        let mut t = CoefficientTable::new();
        let spec = BoundSpec::sharp(Family::P1Lower, 0, &mut t).unwrap();
        let c = sharpness_probe(&spec, &eps(1, 100), &PrecisionPolicy::default()).unwrap();
        assert_eq!(c.status, Status::Refuted);
        assert!(c.witnesses[0].coords[0] <= 0.25);
    }

    #[test]
    fn unsupported_families() {
        let spec = BoundSpec::new(Family::M1Improvement, 0, None).unwrap();
        assert!(matches!(
            sharpness_probe(&spec, &eps(1, 100), &PrecisionPolicy::default()),
            Err(Error::Unsupported(_))
        ));
        let mut t = CoefficientTable::new();
        let spec = BoundSpec::sharp(Family::P1Lower, 0, &mut t).unwrap();
        assert!(sharpness_probe(&spec, &eps(0, 1), &PrecisionPolicy::default()).is_err());
    }
}
