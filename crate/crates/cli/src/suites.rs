use std::time::Instant;

use mzsv_core::exact::{mhs, mhs_star, mollified_big};
use mzsv_core::families::displays::{
    zeta_c21_r1, zeta_c212_r1, zeta_two_one_c2_r1, zeta_two_one_r2, zeta_two_one_two_r2,
};
use mzsv_core::families::lemma31::{lemma31_grid_cases, lemma31_sides, KernelParams, Variant};
use mzsv_core::families::{verify_instance, Family, FamilySpec};
use mzsv_core::index::parse_index;
use mzsv_core::numeric::{self, IttwCase, NumericCheck};
use mzsv_core::report::ReportItem;
use mzsv_core::stuffle::{verify_middlestep_1, verify_middlestep_2, MiddlestepReport, DEFAULT_DEPTH_CAP};
use mzsv_core::SignedIndex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::{spec_params, CliError, Context};

fn numeric_item(ctx: &Context, start: Instant, check: NumericCheck, params: serde_json::Value) -> ReportItem {
    ReportItem::numeric(&check, params).with_elapsed(ctx.elapsed(start))
}

pub(crate) fn ittw(ctx: &Context, n: u64) -> Result<Vec<ReportItem>, CliError> {
    let n = n as u32;
    let mut cases = Vec::new();
    for a in 0..=n {
        for b in 0..=n {
            cases.push(IttwCase::I { n: a, m: b });
        }
    }
    for k in 1..=n.max(1) {
        cases.push(IttwCase::Ii { n: k });
        cases.push(IttwCase::Iii { n: k });
    }
    let mut items = Vec::new();
    for case in cases {
        let start = Instant::now();
        let check = numeric::verify_ittw_conj2(case, ctx.global.tol)?;
        items.push(numeric_item(ctx, start, check, serde_json::to_value(case).expect("serializes")));
    }
    Ok(items)
}

fn lemma31_item(ctx: &Context, variant: Variant, kp: &KernelParams, n_max: u64) -> ReportItem {
    let start = Instant::now();
    let mut failed = Vec::new();
    let mut last = (String::new(), String::new());
    for n in 1..=n_max {
        let (lhs, rhs) = lemma31_sides(variant, kp, n).expect("parameters are valid");
        if lhs != rhs {
            failed.push(n);
        }
        last = (lhs.to_string(), rhs.to_string());
    }
    let label = format!("variant ({variant}) m={} a={} c={} v=({})", kp.m, kp.a, kp.c, kp.v);
    let params = json!({"variant": variant, "m": kp.m, "a": kp.a, "c": kp.c, "v": kp.v});
    let mut item = ReportItem::exact(label, params, Some(n_max), last.0, last.1, failed.is_empty());
    if !failed.is_empty() {
        item.label = format!("{} (fails at n = {failed:?})", item.label);
    }
    item.with_elapsed(ctx.elapsed(start))
}

/// The fixed grid followed by seeded random kernels with random `v`.
pub(crate) fn lemma31(ctx: &Context, n_max: u64) -> Result<Vec<ReportItem>, CliError> {
    if n_max == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let mut cases = lemma31_grid_cases();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.global.seed);
    for _ in 0..24 {
        let variant = Variant::ALL[rng.gen_range(0..4)];
        let (m, a, c) = match variant {
            Variant::I | Variant::Iii => (rng.gen_range(1..=2), rng.gen_range(0..=3), rng.gen_range(1..=3)),
            Variant::Ii | Variant::Iv => (2, rng.gen_range(1..=3), 1),
        };
        let depth = rng.gen_range(0..=3);
        let parts: Vec<i64> = (0..depth)
            .map(|_| {
                let magnitude = rng.gen_range(1..=3);
                if rng.gen_bool(0.5) {
                    magnitude
                } else {
                    -magnitude
                }
            })
            .collect();
        let v = SignedIndex::new(parts).expect("nonzero parts");
        cases.push((variant, KernelParams { m, kind: variant.lhs_kernel(), a, c, v }));
    }
    Ok(cases.par_iter().map(|(variant, kp)| lemma31_item(ctx, *variant, kp, n_max)).collect())
}

fn middlestep_item(ctx: &Context, start: Instant, which: u32, report: &MiddlestepReport) -> ReportItem {
    let label = format!("middlestep {which} n={}", report.n);
    let lhs = format!("{} * [{} terms]", report.scale, report.lhs.len());
    let rhs = format!("[{} terms], residual {}", report.rhs.len(), report.residual);
    ReportItem::exact(label, json!({"which": which, "n": report.n}), Some(report.n), lhs, rhs, report.holds())
        .with_elapsed(ctx.elapsed(start))
}

pub(crate) fn middlestep(ctx: &Context, n: u64) -> Result<Vec<ReportItem>, CliError> {
    let mut items = Vec::new();
    for k in 1..=n.max(1) {
        let start = Instant::now();
        let report = verify_middlestep_1(k, DEFAULT_DEPTH_CAP).map_err(|e| CliError::Usage(e.to_string()))?;
        items.push(middlestep_item(ctx, start, 1, &report));
        let start = Instant::now();
        let report = verify_middlestep_2(k, DEFAULT_DEPTH_CAP).map_err(|e| CliError::Usage(e.to_string()))?;
        items.push(middlestep_item(ctx, start, 2, &report));
    }
    Ok(items)
}

fn index(text: &str) -> SignedIndex {
    parse_index(text).expect("literal index")
}

fn expect_exact(label: &str, value: String, expected: &str) -> ReportItem {
    let equal = value == expected;
    ReportItem::exact(label, json!({}), None, value, expected.to_string(), equal)
}

/// Worked examples: exact values, family instances and the zeta-value
/// anchors.
pub(crate) fn paper_examples(ctx: &Context) -> Result<Vec<ReportItem>, CliError> {
    let mut items = vec![
        expect_exact("H_2(2,1)", mhs(2, &index("2,1")).to_string(), "1/4"),
        expect_exact("H*_2(2,1)", mhs_star(2, &index("2,1")).to_string(), "11/8"),
        expect_exact(
            "mollified-big_2(3)",
            mollified_big(2, &index("3")).expect("nonempty").to_string(),
            "11/16",
        ),
    ];
    let specs = [
        FamilySpec::new(Family::TwoOne, vec![1], vec![], vec![], 0),
        FamilySpec::new(Family::TwoOne, vec![1, 1], vec![], vec![], 0),
        FamilySpec::new(Family::TwoOneTwo, vec![1, 0, 1], vec![], vec![], 0),
        FamilySpec::new(Family::C21, vec![0], vec![0], vec![3], 0),
        FamilySpec::new(Family::OnesC, vec![0], vec![], vec![1], 0),
    ];
    for spec in &specs {
        for n in 1..=10 {
            let start = Instant::now();
            let report = verify_instance(spec, n).map_err(|e| CliError::Usage(e.to_string()))?;
            items.push(
                ReportItem::exact(
                    spec.to_string(),
                    spec_params(spec),
                    Some(n),
                    report.lhs.to_string(),
                    report.rhs.to_string(),
                    report.equal,
                )
                .with_elapsed(ctx.elapsed(start)),
            );
        }
    }

    let tol = ctx.global.tol;
    let displays = [
        zeta_two_one_r2(1, 1),
        zeta_two_one_two_r2(1, 0, 1),
        zeta_c21_r1(0, 0),
        zeta_c212_r1(0, 0, 1),
        zeta_two_one_c2_r1(1, 0),
    ];
    for display in &displays {
        let start = Instant::now();
        let check = numeric::verify_zeta_display(display, tol)?;
        items.push(numeric_item(ctx, start, check, json!({"display": display.name})));
    }
    let start = Instant::now();
    items.push(numeric_item(ctx, start, numeric::check_zlobin(2, tol)?, json!({"n": 2})));
    let start = Instant::now();
    items.push(numeric_item(ctx, start, numeric::check_three_n(1, tol)?, json!({"n": 1})));

    let rtol = ctx.global.recognition_tol;
    let start = Instant::now();
    items.push(numeric_item(ctx, start, numeric::hoffman_symmetric_check(&[2, 2], rtol)?, json!({"args": [2, 2]})));
    let start = Instant::now();
    items.push(numeric_item(ctx, start, numeric::verify_yamamoto(1, 0, rtol)?, json!({"r": 1, "m": 0})));
    let start = Instant::now();
    items.push(numeric_item(ctx, start, numeric::verify_muneta(1, rtol)?, json!({"n": 1})));
    Ok(items)
}

