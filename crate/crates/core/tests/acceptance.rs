//! Acceptance suite: one pass/fail line per criterion.
//!
//! Run with `cargo test -p ellipmono-core --test acceptance -- --nocapture`.

use std::time::Instant;

use ellipmono_core::coeff::{CoefficientTable, PValue};
use ellipmono_core::elliptic::{
    agm_k, alpha, asymptotic_defect, beta, derivative_check, hyp_series, lt_check, HypKind,
};
use ellipmono_core::exact::{enclose_constant, Constant, ExactValue, Interval, PiExpression};
use ellipmono_core::verify::{
    certify_sequence, default_grid, default_x_grid, grid_verify_with, j_truncation_check,
    m1_identity_residual, p3_threshold, sharpness_probe, BoundSpec, Claim, Expect, Family,
    PrecisionPolicy, Status, Threshold,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::test_runner::{RngAlgorithm, TestRng};
use proptest::prelude::Rng;

const C1_MAX_SECONDS: f64 = 1.0;
const C2_N_MAX: usize = 2000;
const C3_INDICES: [usize; 5] = [100, 200, 400, 800, 1600];
const C4_N_MAX: usize = 500;
const C5_PRECISION: u32 = 256;
const C5_MAX_COMBINED_WIDTH: f64 = 1e-20;
const C6_N_MAX: usize = 1000;
const C7_MIN_POINTS: usize = 200;
const C8_EPS_P1: (i64, i64) = (1, 100);
const C8_EPS_EKDIFF: (i64, i64) = (1, 1000);
const C9_LT_POINTS: usize = 20;
const C9_M1_POINTS: usize = 50;
const C9_DEFECT_BOUND: f64 = 1e-3;
const C10_TERMS: usize = 50;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pe(coeffs: &[(i64, i64)]) -> PiExpression {
    PiExpression::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect(), true)
}

struct Report {
    lines: Vec<(usize, bool, String)>,
}

impl Report {
    fn record(&mut self, n: usize, ok: bool, detail: String) {
        println!("criterion {n:>2}: {} | {detail}", if ok { "PASS" } else { "FAIL" });
        self.lines.push((n, ok, detail));
    }
}

fn policy(start: u32, max: u32) -> PrecisionPolicy {
    PrecisionPolicy::new(start, max).unwrap()
}

fn criterion_1() -> (bool, String) {
    let t0 = Instant::now();
    let mut t = CoefficientTable::new();
    let expect = [
        pe(&[(1, 1)]),
        pe(&[(0, 1), (1, 8)]),
        pe(&[(0, 1), (9, 128), (1, 128)]),
        pe(&[(0, 1), (150, 3072), (27, 3072), (1, 3072)]),
    ];
    let ok_forms = (0..4).all(|n| t.b(n) == &expect[n]);
    let secs = t0.elapsed().as_secs_f64();
    (
        ok_forms && secs < C1_MAX_SECONDS,
        format!("b_0..b_3 equal closed forms: {ok_forms}; runtime {secs:.4} s"),
    )
}

fn criterion_2() -> (bool, String) {
    let t0 = Instant::now();
    let mut t = CoefficientTable::new();
    let p = policy(128, 4096);
    let inc = certify_sequence(&Claim::RatioIncreasing, 1, C2_N_MAX, &p, &mut t).unwrap();
    let below = certify_sequence(&Claim::RatioBelow4, 1, C2_N_MAX, &p, &mut t).unwrap();
    let r1000 = t.ratio(1000, 128).unwrap();
    let r2000 = t.ratio(2000, 128).unwrap();
    let above = r2000.lo() > r1000.hi();
    let ok = inc.is_certified() && below.is_certified() && above;
    (
        ok,
        format!(
            "ratio_increasing {} ({} bits), ratio_below_4 {}, ratio(2000) = {} > ratio(1000) = {}: {above}; {:.1} s",
            inc.status,
            inc.precision_used,
            below.status,
            r2000.to_decimal(20),
            r1000.to_decimal(20),
            t0.elapsed().as_secs_f64()
        ),
    )
}

fn criterion_3() -> (bool, String) {
    let mut t = CoefficientTable::new();
    let gaps: Vec<f64> = C3_INDICES
        .iter()
        .map(|&n| {
            let r = t.ratio(n, 128).unwrap();
            (BigRational::from_integer(BigInt::from(4)) - r.mid()).to_f64().unwrap()
        })
        .collect();
    let positive = gaps.iter().all(|&g| g > 0.0);
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    let rates: Vec<String> = gaps.windows(2).map(|w| format!("{:.3}", w[0] / w[1])).collect();
    (
        positive && decreasing,
        format!(
            "gaps {:?}; successive ratios under doubling n: [{}] (recorded only)",
            gaps.iter().map(|g| format!("{g:.4e}")).collect::<Vec<_>>(),
            rates.join(", ")
        ),
    )
}

fn criterion_4() -> (bool, String) {
    let mut t = CoefficientTable::new();
    let p = policy(64, 1024);
    let u = certify_sequence(&Claim::USigns, 0, C4_N_MAX, &p, &mut t).unwrap();
    let vp = certify_sequence(&Claim::VPositive, 2, C4_N_MAX, &p, &mut t).unwrap();
    let vd = certify_sequence(&Claim::VDecreasing, 2, C4_N_MAX, &p, &mut t).unwrap();
    let v100 = t.v(100).evaluate(128).unwrap();
    let v500 = t.v(500).evaluate(128).unwrap();
    let shrinking = v500.mid() < v100.mid();
    (
        u.is_certified() && vp.is_certified() && vd.is_certified() && shrinking,
        format!(
            "u_signs {}, v_positive {}, v_decreasing {}, v_100 = {}, v_500 = {}",
            u.status,
            vp.status,
            vd.status,
            v100.to_decimal(12),
            v500.to_decimal(12)
        ),
    )
}

fn criterion_5() -> (bool, String) {
    let q = C5_PRECISION;
    let pi = enclose_constant(Constant::Pi, q + 16).unwrap();
    let mut worst = 0.0f64;
    let mut all_overlap = true;
    for k in [1, 3, 5, 7, 9] {
        let x = rat(k * k, 100);
        let a = agm_k(&x, q).unwrap();
        let s = hyp_series(HypKind::FHalfHalf1, &x, q + 16).unwrap().enclosure();
        let series = (&pi.mul_pow2(-1) * &s).round_to(q);
        all_overlap &= a.overlaps(&series);
        worst = worst.max(a.width_f64() + series.width_f64());
    }
    let k_half = agm_k(&rat(1, 2), q).unwrap();
    let g = enclose_constant(Constant::GammaQuarter, q + 16).unwrap();
    let sp = enclose_constant(Constant::SqrtPi, q + 16).unwrap();
    let closed = g.sqr().div(&sp.mul_pow2(2)).unwrap().round_to(q);
    let lemniscate = k_half.overlaps(&closed);
    (
        all_overlap && worst <= C5_MAX_COMBINED_WIDTH && lemniscate,
        format!(
            "AGM vs series overlap: {all_overlap}, max combined width {worst:.3e}; \
             K(1/sqrt 2) contains Gamma(1/4)^2/(4 sqrt pi): {lemniscate}"
        ),
    )
}

fn criterion_6() -> (bool, String) {
    let mut t = CoefficientTable::new();
    let p = PrecisionPolicy::default();
    let p1 = ExactValue::from(pe(&[(0, 1), (1, 4)]));
    let a = certify_sequence(
        &Claim::CSign {
            p: PValue::Exact(p1),
            expect: Expect::NonNegative,
        },
        0,
        C6_N_MAX,
        &p,
        &mut t,
    )
    .unwrap();
    let e = ExactValue::from(PiExpression::exp_half_pi());
    let b = certify_sequence(
        &Claim::CSign {
            p: PValue::Exact(e),
            expect: Expect::NonPositive,
        },
        0,
        C6_N_MAX,
        &p,
        &mut t,
    )
    .unwrap();
    let four = PValue::Exact(ExactValue::from_integer(4));
    let c = certify_sequence(
        &Claim::CSign {
            p: four.clone(),
            expect: Expect::NonPositive,
        },
        1,
        C6_N_MAX,
        &p,
        &mut t,
    )
    .unwrap();
    let c0 = t.c_coeff(0, &four, 128).unwrap();
    let c0_pos = c0.sign() == ellipmono_core::exact::Sign::Positive;
    let ok = a.is_certified()
        && a.boundary == ["n = 1"]
        && b.is_certified()
        && b.boundary == ["n = 0"]
        && c.is_certified()
        && c.boundary.is_empty()
        && c0_pos;
    (
        ok,
        format!(
            "p = pi e^(pi/2)/4: {} zeros {:?}; p = e^(pi/2): {} zeros {:?}; p = 4: {} zeros {:?}, c_0(4) > 0: {c0_pos}",
            a.status, a.boundary, b.status, b.boundary, c.status, c.boundary
        ),
    )
}

fn criterion_7() -> (bool, String) {
    let t0 = Instant::now();
    let mut t = CoefficientTable::new();
    let p = PrecisionPolicy::default();
    let mut specs = vec![
        BoundSpec::sharp(Family::P1Lower, 0, &mut t).unwrap(),
        BoundSpec::sharp(Family::P1Upper, 0, &mut t).unwrap(),
        BoundSpec::sharp(Family::P1Lower, 1, &mut t).unwrap(),
        BoundSpec::sharp(Family::P1Upper, 1, &mut t).unwrap(),
        BoundSpec::new(Family::P2Lower, 0, None).unwrap(),
        BoundSpec::new(Family::P2Upper, 0, None).unwrap(),
        BoundSpec::sharp(Family::EkDiffLower, 0, &mut t).unwrap(),
        BoundSpec::sharp(Family::EkDiffUpper, 0, &mut t).unwrap(),
        BoundSpec::new(Family::Rmk4CompareQi, 0, None).unwrap(),
        BoundSpec::new(Family::Rmk4CompareYi, 0, None).unwrap(),
    ];
    for fam in [Family::CP3Lower, Family::CP3Upper] {
        for th in [p3_threshold(), ExactValue::from_integer(4)] {
            specs.push(BoundSpec::new(fam, 0, Some(Threshold::Exact(th))).unwrap());
        }
    }
    let mut failures = Vec::new();
    let mut min_points = usize::MAX;
    for spec in &specs {
        let grid = default_grid(spec.family, 200);
        min_points = min_points.min(grid.len());
        let c = grid_verify_with(spec, &grid, &p, &mut t).unwrap();
        if !c.is_certified() {
            failures.push(format!("{} -> {}", spec.describe(), c.status));
        }
    }
    let a = alpha(128).unwrap();
    let b = beta(128).unwrap();
    let reads = |v: &Interval, lo: BigRational| v.lo() >= lo && v.hi() < &lo + rat(1, 1000);
    let ab = reads(&a, rat(810, 1000)) && reads(&b, rat(246, 1000));
    (
        failures.is_empty() && min_points >= C7_MIN_POINTS && ab,
        format!(
            "{} grid verifications, min {min_points} points, failures {failures:?}; alpha = {}, beta = {} read 0.810/0.246: {ab}; {:.1} s",
            specs.len(),
            a.to_decimal(12),
            b.to_decimal(12),
            t0.elapsed().as_secs_f64()
        ),
    )
}

fn criterion_8() -> (bool, String) {
    let mut t = CoefficientTable::new();
    let p = PrecisionPolicy::default();
    let eps1 = rat(C8_EPS_P1.0, C8_EPS_P1.1);
    let eps2 = rat(C8_EPS_EKDIFF.0, C8_EPS_EKDIFF.1);
    let lower = sharpness_probe(&BoundSpec::sharp(Family::P1Lower, 0, &mut t).unwrap(), &eps1, &p).unwrap();
    let upper = sharpness_probe(&BoundSpec::sharp(Family::P1Upper, 0, &mut t).unwrap(), &eps1, &p).unwrap();
    let ek = sharpness_probe(&BoundSpec::sharp(Family::EkDiffUpper, 0, &mut t).unwrap(), &eps2, &p).unwrap();
    let at = |c: &ellipmono_core::verify::Certificate| c.witnesses.first().map(|w| w.coords[0].sqrt());
    let ok = lower.status == Status::Refuted
        && at(&lower).is_some_and(|r| r <= 0.5)
        && upper.status == Status::Refuted
        && at(&upper).is_some_and(|r| r >= 0.9)
        && ek.status == Status::Refuted
        && at(&ek).is_some_and(|r| r <= 0.5);
    (
        ok,
        format!(
            "P1 lower {} at r = {:?}; P1 upper {} at r = {:?}; EKDIFF upper {} at r = {:?}",
            lower.status,
            at(&lower),
            upper.status,
            at(&upper),
            ek.status,
            at(&ek)
        ),
    )
}

fn criterion_9() -> (bool, String) {
    let mut rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let triples = [(rat(1, 2), rat(1, 2), rat(2, 1)), (rat(3, 2), rat(3, 2), rat(2, 1))];
    let mut lt_ok = true;
    for _ in 0..C9_LT_POINTS {
        let k = (rng.next_u64() % ((1 << 20) - 1)) as i64 + 1;
        let x = rat(k, 1 << 20);
        for (a, b, c) in &triples {
            lt_ok &= lt_check(a, b, c, &x, 128).unwrap().contains_zero();
        }
    }

    let mut ratios = Vec::new();
    for x in [rat(1, 4), rat(1, 2), rat(3, 4)] {
        let h = rat(1, 1000);
        let d1 = derivative_check(&x, &h, 160).unwrap();
        let d2 = derivative_check(&x, &(h * rat(1, 2)), 160).unwrap();
        let e1 = (d1.central.mid() - d1.g_prime.mid()).to_f64().unwrap();
        let e2 = (d2.central.mid() - d2.g_prime.mid()).to_f64().unwrap();
        ratios.push(e1 / e2);
    }
    let fd_ok = ratios.iter().all(|r| (3.9..=4.1).contains(r));

    let grid = default_x_grid(C9_M1_POINTS + 1);
    let m1_ok = grid.len() >= C9_M1_POINTS
        && grid.iter().all(|x| m1_identity_residual(x, 128).unwrap().contains_zero());

    let x = BigRational::one() - rat(1, 1 << 16);
    let d = asymptotic_defect(&x, 128).unwrap();
    let defect_ok = d.abs().hi_f64() < C9_DEFECT_BOUND;

    (
        lt_ok && fd_ok && m1_ok && defect_ok,
        format!(
            "linear transformation residuals contain 0: {lt_ok}; FD error ratios h/(h/2) {ratios:.4?}; \
             M1 identity on {} points: {m1_ok}; defect at x = 1 - 2^-16 = {}",
            grid.len(),
            d.to_decimal(8)
        ),
    )
}

fn criterion_10() -> (bool, String) {
    let c = j_truncation_check(C10_TERMS, 128).unwrap();
    (
        c.is_certified(),
        format!("{} quotient coefficients: {} ({} bits)", C10_TERMS, c.status, c.precision_used),
    )
}

#[test]
fn acceptance_criteria() {
    let mut report = Report { lines: Vec::new() };
    let criteria: [fn() -> (bool, String); 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    for (i, f) in criteria.iter().enumerate() {
        let (ok, detail) = f();
        report.record(i + 1, ok, detail);
    }
    let failed: Vec<usize> = report.lines.iter().filter(|l| !l.1).map(|l| l.0).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
