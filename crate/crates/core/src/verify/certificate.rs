use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Interval, Sign};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Certified,
    Refuted,
    Undecided,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Certified => "Certified",
            Status::Refuted => "Refuted",
            Status::Undecided => "Undecided",
        };
        f.write_str(s)
    }
}

/// A point where the claimed sign was contradicted or could not be decided.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    /// Exact description, e.g. `n = 17` or `x = 1/16`.
    pub point: String,
    /// Floating-point coordinates of the point (index, `x`, or `(x, y)`).
    pub coords: Vec<f64>,
    /// `mid ± radius` of the enclosure that was signed.
    pub enclosure: String,
    pub sign: Sign,
}

impl Witness {
    pub fn new(point: impl Into<String>, coords: Vec<f64>, enclosure: &Interval) -> Self {
        Witness {
            point: point.into(),
            coords,
            enclosure: enclosure.to_decimal(30),
            sign: enclosure.sign(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub claim: String,
    pub range: String,
    pub status: Status,
    pub precision_used: u32,
    pub checked: usize,
    pub witnesses: Vec<Witness>,
    /// Points where the quantity is exactly zero (allowed for non-strict
    /// claims).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub boundary: Vec<String>,
    pub scope: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Drop the wall-clock field, for byte-for-byte comparisons.
    pub fn without_timestamp(mut self) -> Self {
        self.runtime_ms = None;
        self
    }
}

/// Adaptive precision schedule: start at `start_bits`, double on an
/// undecided sign, stop after `max_bits`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start_bits: 128,
            max_bits: 8192,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(start_bits: u32, max_bits: u32) -> Result<Self> {
        if start_bits < 8 || start_bits > max_bits {
            return Err(Error::Domain(format!(
                "precision policy needs 8 ≤ start_bits ≤ max_bits, got {start_bits} and {max_bits}"
            )));
        }
        Ok(PrecisionPolicy {
            start_bits,
            max_bits,
        })
    }

    pub fn fixed(bits: u32) -> Self {
        PrecisionPolicy {
            start_bits: bits,
            max_bits: bits,
        }
    }

    pub fn schedule(&self) -> impl Iterator<Item = u32> {
        let max = self.max_bits;
        std::iter::successors(Some(self.start_bits), move |&p| {
            let next = p.saturating_mul(2);
            (p < max).then_some(next.min(max))
        })
    }
}

/// Outcome of signing one quantity.
#[derive(Clone, Debug)]
pub(crate) enum Outcome {
    /// Sign matched the claim.
    Holds(u32),
    /// Exactly zero.
    Zero,
    /// Certified sign opposite to the claim.
    Fails(u32, Interval),
    Undecided(u32, Interval),
}

impl Outcome {
    pub(crate) fn precision(&self) -> u32 {
        match self {
            Outcome::Holds(p) | Outcome::Fails(p, _) | Outcome::Undecided(p, _) => *p,
            Outcome::Zero => 0,
        }
    }
}

/// Sign a quantity (already oriented so that the claim means "positive")
/// under the adaptive schedule.
pub(crate) fn sign_adaptively(
    policy: &PrecisionPolicy,
    mut eval: impl FnMut(u32) -> Result<Interval>,
) -> Result<Outcome> {
    let mut last = None;
    for p in policy.schedule() {
        let v = eval(p)?;
        match v.sign() {
            Sign::Positive => return Ok(Outcome::Holds(p)),
            Sign::Negative => return Ok(Outcome::Fails(p, v)),
            Sign::Undecided => last = Some((p, v)),
        }
    }
    let (p, v) = last.expect("schedule is non-empty");
    Ok(Outcome::Undecided(p, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_doubles_to_cap() {
        let p = PrecisionPolicy::new(128, 1000).unwrap();
        assert_eq!(p.schedule().collect::<Vec<_>>(), vec![128, 256, 512, 1000]);
        assert_eq!(PrecisionPolicy::fixed(64).schedule().collect::<Vec<_>>(), vec![64]);
        assert!(PrecisionPolicy::new(256, 128).is_err());
    }
}
