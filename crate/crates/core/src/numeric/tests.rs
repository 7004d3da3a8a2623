use super::*;
use crate::exact::mollified_big;
use crate::families::displays::{zeta_c21_r1, zeta_two_one_r2, zeta_two_one_two_r2};
use crate::families::{Family, FamilySpec};
use crate::index::idx;
use proptest::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Rational;

fn close(a: &Float, b: &Float, eps: f64) -> bool {
    Float::with_val(a.prec().max(b.prec()), a - b).abs() <= eps
}

fn pi_pow(prec: u32, w: i32) -> Float {
    Float::with_val(prec, Constant::Pi).pow(w)
}

#[test]
fn closed_form_anchors() {
    let prec = 200;
    let z2 = zeta(&idx(&[2]), 1e-12).unwrap();
    assert!(close(&z2.value, &(pi_pow(prec, 2) / 6u32), 1e-12));
    assert!(z2.error_bound() <= 1e-12);
    let zm2 = zeta(&idx(&[-2]), 1e-12).unwrap();
    assert!(close(&zm2.value, &(-pi_pow(prec, 2) / 12u32), 1e-12));
    let zs = zeta_star(&idx(&[2, 2]), 1e-12).unwrap();
    assert!(close(&zs.value, &(pi_pow(prec, 4) * 7u32 / 360u32), 1e-12));
    let zm1 = zeta(&idx(&[-1]), 1e-20).unwrap();
    assert!(close(&zm1.value, &-Float::with_val(prec, Constant::Log2), 1e-20));
    assert_eq!(zeta(&SignedIndex::empty(), 1e-6).unwrap().value, 1);
}

#[test]
fn euler_and_classical_relations() {
    let tol = 1e-25;
    // ζ(2,1) = ζ(3)
    let a = zeta(&idx(&[2, 1]), tol).unwrap();
    let b = zeta(&idx(&[3]), tol).unwrap();
    assert!(close(&a.value, &b.value, 2.0 * tol));
    // ζ(-1,-1) = (ζ(-1)^2 - ζ(2)) / 2
    let l = zeta(&idx(&[-1, -1]), tol).unwrap();
    let m1 = zeta(&idx(&[-1]), tol).unwrap().value;
    let z2 = zeta(&idx(&[2]), tol).unwrap().value;
    let r = (Float::with_val(200, &m1 * &m1) - z2) / 2u32;
    assert!(close(&l.value, &r, 4.0 * tol));
}

#[test]
fn divergent_indices_are_errors() {
    for s in [idx(&[1]), idx(&[1, 2]), idx(&[1, -1])] {
        assert_eq!(zeta(&s, 1e-6).unwrap_err(), NumericError::Inadmissible(s.clone()));
        assert!(zeta_star(&s, 1e-6).is_err());
    }
    assert!(matches!(zeta(&idx(&[2]), 0.0), Err(NumericError::InvalidTolerance(_))));
    assert!(matches!(zeta(&idx(&[2]), f64::NAN), Err(NumericError::InvalidTolerance(_))));
}

#[test]
fn star_depth_one_is_plain() {
    for p in [2, -2, 3, -1, -5] {
        let a = zeta(&idx(&[p]), 1e-15).unwrap();
        let b = zeta_star(&idx(&[p]), 1e-15).unwrap();
        assert!(close(&a.value, &b.value, 1e-15));
    }
}

#[test]
fn star_two_one_cross_path() {
    let tol = 1e-15;
    let star = zeta_star(&idx(&[2, 1]), tol).unwrap();
    let sum = zeta(&idx(&[2, 1]), tol).unwrap().value + zeta(&idx(&[3]), tol).unwrap().value;
    assert!(close(&star.value, &sum, 2.0 * tol));
}

#[test]
fn mollified_companion_converges_to_zeta() {
    // the binomial weight acts as a cutoff, 𝓗_n(p) → ζ(p) like log(n)/n
    let target = zeta(&idx(&[3]), 1e-12).unwrap().value.to_f64();
    let errors: Vec<f64> = [10u64, 40, 160]
        .iter()
        .map(|&n| (mollified_big(n, &idx(&[3])).unwrap().to_f64() - target).abs())
        .collect();
    assert!(errors[0] > errors[1] && errors[1] > errors[2], "{errors:?}");
    assert!(errors[2] < 0.05);
}

#[test]
fn partial_sums_bracket_zeta() {
    let s = idx(&[3, -1, 2]);
    let partial = zeta_partial(&s, 2000, false, 128).unwrap();
    let full = zeta(&s, 1e-20).unwrap();
    let diff = Float::with_val(128, &partial.value - &full.value).abs().to_f64();
    assert!(diff <= partial.error_bound() + 1e-20, "{diff} vs {}", partial.error_bound());
    assert!(zeta_partial(&idx(&[-1, 2]), 100, false, 128).is_err());
}

#[test]
fn bernoulli_beta_relation() {
    // β_n π^{2n} = -2 ζ(-2n) = ζ*({2}^n)
    for n in 1..=4u32 {
        let beta = beta_coeff(n as usize).unwrap();
        let exact = Float::with_val(200, &beta) * pi_pow(200, 2 * n as i32);
        let numeric = zeta(&idx(&[-2 * n as i64]), 1e-25).unwrap().value * -2i32;
        assert!(close(&exact, &numeric, 1e-24), "n = {n}");
    }
}

#[test]
fn zlobin_and_three_n() {
    for n in 1..=3 {
        let check = check_zlobin(n, 1e-8).unwrap();
        assert!(check.passed(), "{check:?}");
    }
    for n in 1..=2 {
        let check = check_three_n(n, 1e-8).unwrap();
        assert!(check.passed(), "{check:?}");
    }
    assert!(check_zlobin(0, 1e-6).is_err());
}

#[test]
fn family_examples() {
    let tol = 1e-6;
    let two_one = FamilySpec::new(Family::TwoOne, vec![1, 1], vec![], vec![], 0);
    let check = verify_mzsv_family(&two_one, tol).unwrap();
    assert!(check.passed(), "{check:?}");
    assert!(check.budget <= tol);

    let check = verify_zeta_display(&zeta_two_one_r2(1, 1), tol).unwrap();
    assert!(check.passed(), "{check:?}");
    let check = verify_zeta_display(&zeta_c21_r1(0, 0), tol).unwrap();
    assert!(check.passed(), "{check:?}");
    let check = verify_zeta_display(&zeta_two_one_two_r2(1, 0, 1), tol).unwrap();
    assert!(check.passed(), "{check:?}");
}

#[test]
fn wrong_sign_is_detected() {
    let mut display = zeta_two_one_r2(1, 1);
    display.rhs = display.rhs.scaled(-1);
    let check = verify_zeta_display(&display, 1e-6).unwrap();
    assert!(!check.passed());
}

#[test]
fn family_errors() {
    let ones = FamilySpec::new(Family::OnesC, vec![0], vec![], vec![1], 0);
    assert!(matches!(verify_mzsv_family(&ones, 1e-6), Err(NumericError::Unsupported(_))));
    let bad = FamilySpec::new(Family::C21, vec![0], vec![0], vec![2], 0);
    assert!(matches!(verify_mzsv_family(&bad, 1e-6), Err(NumericError::Family(_))));
    let mut display = zeta_two_one_r2(1, 1);
    display.rhs.add_term(idx(&[1, 2]), 1);
    assert_eq!(verify_zeta_display(&display, 1e-6).unwrap_err(), NumericError::Inadmissible(idx(&[1, 2])));
}

#[test]
fn combinatorial_helpers() {
    let bell = [1, 1, 2, 5, 15];
    for (n, &b) in bell.iter().enumerate() {
        assert_eq!(set_partitions(n).len(), b);
    }
    assert_eq!(weak_compositions(2, 3).len(), 6);
    assert_eq!(weak_compositions(0, 0), vec![Vec::<u32>::new()]);
    assert!(weak_compositions(1, 0).is_empty());
}

#[test]
fn hoffman_cases() {
    let tol = 1e-30;
    for args in [vec![2, 2], vec![-2, -2], vec![2, 2, 2], vec![2, -2, -4]] {
        let check = hoffman_symmetric_check(&args, tol).unwrap();
        assert!(check.passed(), "{check:?}");
    }
    // 2ζ(2,2) = ζ(2)^2 - ζ(4) = π^4/36 - π^4/90 = π^4/60
    let check = hoffman_symmetric_check(&[2, 2], tol).unwrap();
    assert_eq!(check.recognized, Some(Some(Recognized { coeff: "1/60".into(), pi_power: 4 })));
    assert_eq!(hoffman_symmetric_check(&[2, 3], tol).unwrap_err(), NumericError::OddPart(3));
    assert!(matches!(hoffman_symmetric_check(&[2; 5], tol), Err(NumericError::OutOfRange { .. })));
}

#[test]
fn yamamoto_and_muneta() {
    assert_eq!(yamamoto_rhs(1, 0).unwrap(), Rational::from((1, 72)));
    assert_eq!(muneta(1).unwrap(), Rational::from((1, 72)));
    // with m = 0 the composition sum is the single term ζ*({3,1}^r)
    for n in 1..=4 {
        assert_eq!(yamamoto_rhs(n, 0).unwrap(), muneta(n).unwrap(), "n = {n}");
    }
    let tol = 1e-30;
    for m in 0..=1 {
        let check = verify_yamamoto(1, m, tol).unwrap();
        assert!(check.passed(), "{check:?}");
    }
    let check = verify_muneta(1, tol).unwrap();
    assert!(check.passed(), "{check:?}");
    assert!(yamamoto_rhs(0, 1).is_err());
}

#[test]
fn ittw_identities() {
    let tol = 1e-12;
    for n in 0..=1 {
        for m in 0..=1 {
            let check = verify_ittw_conj2(IttwCase::I { n, m }, tol).unwrap();
            assert!(check.passed(), "{check:?}");
        }
    }
    for case in [IttwCase::Ii { n: 1 }, IttwCase::Iii { n: 1 }] {
        let check = verify_ittw_conj2(case, tol).unwrap();
        assert!(check.passed(), "{check:?}");
    }
}

#[test]
fn permutation_sums() {
    let tol = 1e-30;
    let check = verify_theorem81(Theorem81Part::I, &[0, 0], tol).unwrap();
    assert!(check.passed(), "{check:?}");
    // 2ζ*(3,1) = ζ*(2)^2 = π^4/36
    assert_eq!(check.recognized, Some(Some(Recognized { coeff: "1/36".into(), pi_power: 4 })));
    let check = verify_theorem81(Theorem81Part::I, &[1, 0], tol).unwrap();
    assert!(check.passed(), "{check:?}");
    let check = verify_theorem81(Theorem81Part::Ii, &[0, 1, 0], tol).unwrap();
    assert!(check.passed(), "{check:?}");
    assert!(verify_theorem81(Theorem81Part::Ii, &[0], tol).is_err());
    assert!(verify_theorem81(Theorem81Part::I, &[], tol).is_err());
    assert!(verify_theorem81(Theorem81Part::I, &[0; 6], tol).is_err());
}

#[test]
fn recognition_refuses_irrational_sums() {
    // ζ(3)/π^3 is not a small rational
    let z3 = zeta(&idx(&[3]), 1e-30).unwrap();
    assert_eq!(recognize_pi_multiple(&z3.value, 3, 1e-30, DENOMINATOR_CAP), None);
}

fn admissible_index(max_depth: usize, max_weight: u64) -> impl Strategy<Value = SignedIndex> {
    prop::collection::vec(prop_oneof![-4i64..=-1, 1i64..=4], 1..=max_depth)
        .prop_map(|v| SignedIndex::new(v).unwrap())
        .prop_filter("admissible, bounded weight", move |s| s.is_admissible() && s.weight() <= max_weight)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tightening_tol_stays_within_tol(s in admissible_index(3, 8)) {
        let tol = 1e-8;
        let coarse = zeta(&s, tol).unwrap();
        let fine = zeta(&s, tol / 10.0).unwrap();
        prop_assert!(coarse.error_bound() <= tol);
        prop_assert!(close(&coarse.value, &fine.value, tol));
        let coarse = zeta_star(&s, tol).unwrap();
        let fine = zeta_star(&s, tol / 10.0).unwrap();
        prop_assert!(close(&coarse.value, &fine.value, tol));
    }

    #[test]
    fn star_agrees_with_star_partial_sums(s in admissible_index(3, 8)) {
        prop_assume!(s.parts()[0].abs() >= 2);
        let tol = 1e-12;
        let star = zeta_star(&s, tol).unwrap();
        let partial = zeta_partial(&s, 10_000, true, 128).unwrap();
        let diff = Float::with_val(128, &star.value - &partial.value).abs().to_f64();
        prop_assert!(diff <= partial.error_bound() + star.error_bound(), "{} vs {}", diff, partial.error_bound());
    }

    #[test]
    fn partial_sum_bridge(s in admissible_index(3, 8)) {
        prop_assume!(s.parts()[0].abs() >= 2);
        let full = zeta(&s, 1e-12).unwrap();
        let partial = zeta_partial(&s, 10_000, false, 128).unwrap();
        let diff = Float::with_val(128, &full.value - &partial.value).abs().to_f64();
        prop_assert!(diff <= partial.error_bound() + full.error_bound());
    }
}

