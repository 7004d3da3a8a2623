//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Set `MZSV_NIGHTLY=1` for the extended two-one / two-one-two grid.

use std::process::ExitCode;
use std::time::Instant;

use mzsv_core::exact::identities::{check_binomial_identity, check_geometric_identity};
use mzsv_core::exact::oracle::{mhs_oracle, mhs_star_oracle};
use mzsv_core::exact::scaled::ScaledContext;
use mzsv_core::exact::{mhs, mhs_star, MhsEngine};
use mzsv_core::families::displays::{
    zeta_c212_r1, zeta_c21_r1, zeta_c2_two_one_c2_r1, zeta_one_c212_r1, zeta_one_c21_r1,
    zeta_two_one_c2_r1, zeta_two_one_two_r2, ZetaDisplay,
};
use mzsv_core::families::lemma31::lemma31_grid;
use mzsv_core::families::{check_ones_bar_one, verify_sweep, Family, FamilySpec, SweepRanges};
use mzsv_core::index::star_expand;
use mzsv_core::numeric::{
    self, check_three_n, check_zlobin, hoffman_symmetric_check, verify_ittw_conj2,
    verify_muneta, verify_mzsv_family, verify_yamamoto, verify_zeta_display, IttwCase,
    NumericCheck, NumericError,
};
use mzsv_core::stuffle::{stuffle, verify_middlestep_1, verify_middlestep_2};
use mzsv_core::SignedIndex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Constant;
use rug::{Float, Rational};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn random_index(rng: &mut ChaCha8Rng, max_depth: usize, max_part: i64) -> SignedIndex {
    let depth = rng.gen_range(1..=max_depth);
    let parts = (0..depth)
        .map(|_| {
            let m = rng.gen_range(1..=max_part);
            if rng.gen_bool(0.5) {
                m
            } else {
                -m
            }
        })
        .collect();
    SignedIndex::new(parts).unwrap()
}

fn family_sweeps() -> Outcome {
    let nightly = std::env::var("MZSV_NIGHTLY").is_ok_and(|v| v == "1");
    let mut details = Vec::new();
    let mut passed = true;
    let mut run = |n_max: usize, family: Family, ranges: SweepRanges| {
        let ctx = ScaledContext::new(n_max);
        let report = verify_sweep(&ctx, family, &ranges);
        passed &= report.all_passed();
        details.push(format!("{family}: {}/{} cells", report.passed, report.cells));
        for f in report.failures.iter().take(3) {
            details.push(format!("  fails at {} n={}", f.spec, f.n));
        }
    };
    for family in Family::ALL {
        let ranges = SweepRanges {
            r_max: if family == Family::TwoOne { 3 } else { 2 },
            a_max: 2,
            b_max: 2,
            c_values: if family == Family::OnesC { vec![1, 2, 3] } else { vec![3, 4] },
            t_max: 2,
        };
        run(50, family, ranges);
    }
    if nightly {
        for family in [Family::TwoOne, Family::TwoOneTwo] {
            let ranges = SweepRanges { r_max: 2, a_max: 5, b_max: 5, c_values: vec![], t_max: 0 };
            run(100, family, ranges);
        }
    }
    outcome(passed, details.join("; "))
}

fn lemma31_suite() -> Outcome {
    let (checked, failures) = lemma31_grid(30);
    outcome(failures.is_empty(), format!("{} of {checked} cells fail", failures.len()))
}

fn auxiliary_identities() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 1..=60 {
        for l in 0..n {
            count += 1;
            if !check_binomial_identity(n, l) {
                failures.push(format!("binomial n={n} l={l}"));
            }
        }
    }
    for n in 2..=40 {
        for k in 1..n {
            for a in 0..=5 {
                count += 1;
                if !check_geometric_identity(n, k, a) {
                    failures.push(format!("geometric n={n} k={k} a={a}"));
                }
            }
        }
    }
    for a in 0..=4 {
        for n in 1..=40 {
            count += 1;
            if !check_ones_bar_one(a, n) {
                failures.push(format!("ones-bar-one a={a} n={n}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..200 {
        let s = random_index(&mut rng, 6, 4);
        let n = rng.gen_range(0..=30);
        count += 1;
        let via: Rational = star_expand(&s)
            .unwrap()
            .iter()
            .map(|(p, c)| mhs(n, p) * Rational::from(c))
            .sum();
        if via != mhs_star(n, &s) {
            failures.push(format!("star expansion ({s}) n={n}"));
        }
    }
    outcome(failures.is_empty(), format!("{count} exact checks, failures {failures:?}"))
}

fn stuffle_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    for _ in 0..100 {
        let s = random_index(&mut rng, 3, 3);
        let t = random_index(&mut rng, 3, 3);
        let n = rng.gen_range(0..=30);
        let rhs: Rational = stuffle(&s, &t).iter().map(|(p, c)| mhs(n, p) * Rational::from(c)).sum();
        if mhs(n, &s) * mhs(n, &t) != rhs {
            failures.push(format!("({s}) * ({t}) at n={n}"));
        }
    }
    for n in 1..=3 {
        for (which, report) in [(1, verify_middlestep_1(n, 7)), (2, verify_middlestep_2(n, 7))] {
            match report {
                Ok(r) if r.holds() => {}
                Ok(r) => failures.push(format!("middlestep {which} n={n} residual {}", r.residual)),
                Err(e) => failures.push(format!("middlestep {which} n={n}: {e:?}")),
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let passed = failures.is_empty() && secs < 60.0;
    outcome(passed, format!("100 product pairs, middlesteps n<=3, {secs:.1}s, failures {failures:?}"))
}

/// Records a numeric check: it must pass and its budget must be at most `cap`.
fn record(checks: &mut Vec<String>, failures: &mut Vec<String>, result: Result<NumericCheck, NumericError>, cap: f64) {
    match result {
        Ok(check) if check.passed() && check.budget <= cap => checks.push(check.label),
        Ok(check) => failures.push(format!(
            "{}: |diff|={:.2e} budget={:.2e} recognized={:?}",
            check.label, check.difference, check.budget, check.recognized
        )),
        Err(e) => failures.push(e.to_string()),
    }
}

fn numeric_suite() -> Outcome {
    let tol = 1e-6;
    let (mut checks, mut failures) = (Vec::new(), Vec::new());
    for r in 1..=2usize {
        for code in 0..3u32.pow(r as u32) {
            let a: Vec<u32> = (0..r).map(|i| code / 3u32.pow(i as u32) % 3).collect();
            if a[0] == 0 {
                continue;
            }
            let spec = FamilySpec::new(Family::TwoOne, a, vec![], vec![], 0);
            record(&mut checks, &mut failures, verify_mzsv_family(&spec, tol), 1e-5);
        }
    }
    let mut displays: Vec<ZetaDisplay> = Vec::new();
    for a in 1..=2 {
        for b in 0..=2 {
            for c in 1..=2 {
                displays.push(zeta_two_one_two_r2(a, b, c));
                let spec = FamilySpec::new(Family::TwoOneTwo, vec![a, b, c], vec![], vec![], 0);
                record(&mut checks, &mut failures, verify_mzsv_family(&spec, tol), 1e-5);
            }
        }
    }
    for a in 0..=1 {
        for b in 0..=1 {
            displays.push(zeta_c21_r1(a, b));
            displays.push(zeta_one_c21_r1(1, a, b));
            displays.push(zeta_c212_r1(a, b, 1));
            displays.push(zeta_one_c212_r1(1, a, b, 1));
            displays.push(zeta_two_one_c2_r1(1, a));
            for b2 in 0..=1 {
                displays.push(zeta_c2_two_one_c2_r1(a, b, b2));
            }
        }
    }
    for d in &displays {
        record(&mut checks, &mut failures, verify_zeta_display(d, tol), 1e-5);
    }
    for n in 1..=3 {
        record(&mut checks, &mut failures, check_zlobin(n, tol), 1e-5);
    }
    for n in 1..=2 {
        record(&mut checks, &mut failures, check_three_n(n, tol), 1e-5);
    }
    outcome(failures.is_empty(), format!("{} checks passed, failures {failures:?}", checks.len()))
}

fn anchors() -> Outcome {
    let prec = 256;
    let pi = Float::with_val(prec, Constant::Pi);
    let pi2 = Float::with_val(prec, &pi * &pi);
    let pi4 = Float::with_val(prec, &pi2 * &pi2);
    let index = |p: &[i64]| SignedIndex::new(p.to_vec()).unwrap();
    let cases = [
        ("zeta(2)", numeric::zeta(&index(&[2]), 1e-12), Float::with_val(prec, &pi2 / 6u32), 1e-10),
        ("zeta(-2)", numeric::zeta(&index(&[-2]), 1e-12), -Float::with_val(prec, &pi2 / 12u32), 1e-10),
        ("zeta*(2,2)", numeric::zeta_star(&index(&[2, 2]), 1e-12), Float::with_val(prec, &pi4 * 7u32) / 360u32, 1e-9),
    ];
    let mut details = Vec::new();
    let mut passed = true;
    for (name, value, exact, window) in cases {
        match value {
            Ok(v) => {
                let diff = Float::with_val(prec, &v.value - &exact).abs().to_f64();
                passed &= diff <= window;
                details.push(format!("{name} off by {diff:.1e}"));
            }
            Err(e) => {
                passed = false;
                details.push(format!("{name}: {e}"));
            }
        }
    }
    outcome(passed, details.join(", "))
}

fn section_eight() -> Outcome {
    let rtol = 1e-30;
    let (mut checks, mut failures) = (Vec::new(), Vec::new());
    for args in [vec![2, 2], vec![-2, -2], vec![2, 2, 2], vec![2, -2, -4]] {
        record(&mut checks, &mut failures, hoffman_symmetric_check(&args, rtol), rtol);
    }
    for n in 0..=1 {
        for m in 0..=1 {
            record(&mut checks, &mut failures, verify_ittw_conj2(IttwCase::I { n, m }, 1e-12), 1e-12);
        }
    }
    record(&mut checks, &mut failures, verify_ittw_conj2(IttwCase::Ii { n: 1 }, 1e-12), 1e-12);
    record(&mut checks, &mut failures, verify_ittw_conj2(IttwCase::Iii { n: 1 }, 1e-12), 1e-12);
    for m in 0..=1 {
        record(&mut checks, &mut failures, verify_yamamoto(1, m, rtol), rtol);
    }
    record(&mut checks, &mut failures, verify_muneta(1, rtol), rtol);
    outcome(failures.is_empty(), format!("{} checks passed, failures {failures:?}", checks.len()))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let engine = MhsEngine::new(30, 256);
    let mut failures = Vec::new();
    for _ in 0..200 {
        let s = random_index(&mut rng, 4, 4);
        let n = rng.gen_range(0..=30);
        let plain = mhs_oracle(n, &s).unwrap();
        let star = mhs_star_oracle(n, &s).unwrap();
        if mhs(n, &s) != plain || engine.mhs(n, &s) != plain {
            failures.push(format!("H_{n}({s})"));
        }
        if mhs_star(n, &s) != star || engine.mhs_star(n, &s) != star {
            failures.push(format!("H*_{n}({s})"));
        }
    }
    outcome(failures.is_empty(), format!("200 random cases, mismatches {failures:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("exact family sweeps", family_sweeps),
        ("kernel identity variants (i)-(iv)", lemma31_suite),
        ("auxiliary exact identities", auxiliary_identities),
        ("stuffle product law and middlesteps", stuffle_suite),
        ("numeric zeta-star suite at 1e-6", numeric_suite),
        ("closed-form anchors", anchors),
        ("symmetric sums, Yamamoto and Muneta", section_eight),
        ("oracle equivalence", oracle_equivalence),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        all &= result.passed;
        let status = if result.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {}: {name} ({:.1}s) {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            result.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
