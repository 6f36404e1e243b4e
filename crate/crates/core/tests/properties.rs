//! Property tests for enclosure soundness and certificate invariants.

use ellipmono_core::coeff::{CoefficientTable, PValue};
use ellipmono_core::elliptic::{exp_k, exp_k_agm, h_value};
use ellipmono_core::exact::{parse_exact, ExactValue, Interval, PiExpression};
use ellipmono_core::verify::{
    certify_sequence, grid_verify, BoundSpec, Claim, Expect, Family, GridPoint, PrecisionPolicy, Status,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..1000).prop_map(|(n, d)| rat(n, d))
}

fn unit() -> impl Strategy<Value = BigRational> {
    (1i64..1023).prop_map(|k| rat(k, 1024))
}

fn pi_poly() -> impl Strategy<Value = PiExpression> {
    (prop::collection::vec(rational(), 1..5), any::<bool>()).prop_map(|(c, s)| PiExpression::new(c, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arithmetic_contains_exact_result(a in rational(), b in rational(), p in 16u32..200) {
        let (ia, ib) = (Interval::from_rational(&a, p), Interval::from_rational(&b, p));
        prop_assert!((&ia + &ib).contains(&(&a + &b)));
        prop_assert!((&ia - &ib).contains(&(&a - &b)));
        prop_assert!((&ia * &ib).contains(&(&a * &b)));
        if b != rat(0, 1) {
            prop_assert!(ia.div(&ib).unwrap().contains(&(&a / &b)));
        }
    }

    #[test]
    fn sqrt_squares_back(a in (1i64..100_000).prop_map(|n| rat(n, 97)), p in 16u32..200) {
        let s = Interval::from_rational(&a, p).sqrt().unwrap();
        prop_assert!(s.sqr().contains(&a));
    }

    #[test]
    fn higher_precision_nests(e in pi_poly(), p in 32u32..128) {
        let lo = e.evaluate(p).unwrap();
        let hi = e.evaluate(2 * p).unwrap();
        prop_assert!(lo.overlaps(&hi));
        prop_assert!(hi.width() <= lo.width());
    }

    #[test]
    fn display_parses_back(plain in pi_poly(), scaled in pi_poly()) {
        let v = ExactValue::new(plain, scaled);
        let back = parse_exact(&v.to_string()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn exp_k_partial_sums_are_sound(x in unit(), n in 1usize..60) {
        let mut t = CoefficientTable::new();
        let s = exp_k(&x, 64, n, &mut t).unwrap();
        prop_assert!(s.enclosure().overlaps(&exp_k_agm(&x, 64).unwrap()));
    }

    #[test]
    fn h_symmetric(x in unit()) {
        prop_assume!(x != rat(1, 2));
        let a = h_value(&x, 96).unwrap();
        let b = h_value(&(rat(1, 1) - &x), 96).unwrap();
        prop_assert!(a.overlaps(&b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn threshold_at_ratio_k_is_boundary(k in 1usize..12) {
        let mut t = CoefficientTable::new();
        let p = ExactValue::from(t.ratio_exact(k));
        let claim = Claim::CSign { p: PValue::Exact(p), expect: Expect::NonNegative };
        let c = certify_sequence(&claim, k, k + 60, &PrecisionPolicy::default(), &mut t).unwrap();
        prop_assert_eq!(c.status, Status::Certified);
        prop_assert_eq!(c.boundary, vec![format!("n = {k}")]);
    }

    #[test]
    fn refining_a_certified_grid_stays_certified(extra in prop::collection::vec(unit(), 1..6)) {
        let mut t = CoefficientTable::new();
        let spec = BoundSpec::sharp(Family::P1Upper, 1, &mut t).unwrap();
        let mut grid: Vec<GridPoint> = (1..8).map(|k| GridPoint::X(rat(k, 8))).collect();
        prop_assert_eq!(grid_verify(&spec, &grid, 96).unwrap().status, Status::Certified);
        grid.extend(extra.into_iter().map(GridPoint::X));
        prop_assert_eq!(grid_verify(&spec, &grid, 96).unwrap().status, Status::Certified);
    }
}

#[test]
fn certified_claims_survive_higher_precision() {
    let mut t = CoefficientTable::with_exact_limit(40);
    for start in [64, 256, 1024] {
        let policy = PrecisionPolicy::new(start, 4096).unwrap();
        let c = certify_sequence(&Claim::RatioIncreasing, 1, 300, &policy, &mut t).unwrap();
        assert_eq!(c.status, Status::Certified, "start {start}");
    }
}
