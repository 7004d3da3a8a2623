//! Numeric verification of zeta-value identities.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Complete, Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use super::bernoulli::BernoulliTable;
use super::{check_tol, pi, precision_for, recognize_rational, zeta_at, NumericError};
use crate::families::displays::ZetaDisplay;
use crate::families::{build_lhs, build_rhs, FamilySpec};
use crate::index::{merge_all, pi_expand_weighted, star_expand, FormalSum, SignedIndex};

pub const DENOMINATOR_CAP: u64 = 1_000_000;
/// Largest permutation sum (`ℓ!` terms with `ℓ <= 4`) evaluated.
pub const MAX_PERMUTED: usize = 4;

/// `ζ(s)` or `ζ*(s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Zeta {
    pub index: SignedIndex,
    pub star: bool,
}

impl Zeta {
    pub fn plain(index: SignedIndex) -> Self {
        Zeta { index, star: false }
    }

    pub fn star(index: SignedIndex) -> Self {
        Zeta { index, star: true }
    }
}

impl fmt::Display for Zeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", if self.star { "zeta*" } else { "zeta" }, self.index)
    }
}

/// A rational linear combination of products of zeta values.
#[derive(Debug, Clone, Default)]
pub struct Expression {
    terms: Vec<(Rational, Vec<Zeta>)>,
}

impl Expression {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, coeff: impl Into<Rational>, factors: Vec<Zeta>) {
        self.terms.push((coeff.into(), factors));
    }

    pub fn from_formal(sum: &FormalSum, star: bool) -> Self {
        let mut e = Expression::new();
        for (p, c) in sum.iter() {
            e.add(c, vec![Zeta { index: p.clone(), star }]);
        }
        e
    }

    pub fn terms(&self) -> &[(Rational, Vec<Zeta>)] {
        &self.terms
    }

    fn factors(&self) -> impl Iterator<Item = &Zeta> {
        self.terms.iter().flat_map(|(_, f)| f.iter())
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, factors)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for z in factors {
                write!(f, "*{z}")?;
            }
        }
        Ok(())
    }
}

/// A rational multiple of a power of π, rendered as `"p/q * pi^w"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recognized {
    pub coeff: String,
    pub pi_power: u32,
}

impl fmt::Display for Recognized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * pi^{}", self.coeff, self.pi_power)
    }
}

/// Outcome of one numeric identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericCheck {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub lhs_value: String,
    pub rhs_value: String,
    pub difference: f64,
    /// Sum of the error bounds of both sides.
    pub budget: f64,
    pub tol: f64,
    /// `None` when no recognition was attempted.
    pub recognized: Option<Option<Recognized>>,
    pub within_tol: bool,
}

impl NumericCheck {
    pub fn passed(&self) -> bool {
        self.within_tol && !matches!(self.recognized, Some(None))
    }
}

/// Evaluated expression: value and a bound on its total error.
struct Evaluated {
    value: Float,
    bound: f64,
}

fn evaluate_factor(z: &Zeta, tol: f64, prec: u32) -> Result<(Float, f64), NumericError> {
    if !z.index.is_admissible() {
        return Err(NumericError::Inadmissible(z.index.clone()));
    }
    if !z.star {
        let v = zeta_at(&z.index, tol, prec)?;
        let bound = v.error_bound();
        return Ok((v.value, bound));
    }
    let expansion = star_expand(&z.index)?;
    let share = tol / expansion.len().max(1) as f64;
    let mut value = Float::with_val(prec, 0);
    let mut bound = 0.0;
    for (p, c) in expansion.iter() {
        let v = zeta_at(p, share, prec)?;
        value += Float::with_val(prec, &v.value * c);
        bound += v.error_bound() * c.unsigned_abs() as f64;
    }
    Ok((value, bound))
}

/// Evaluates every distinct factor once (in parallel), then combines. A
/// product's error is bounded by `Π(|v_i|+e_i) - Π|v_i|`.
fn evaluate(expr: &Expression, tol: f64, prec: u32) -> Result<Evaluated, NumericError> {
    let weight: f64 = expr
        .terms
        .iter()
        .map(|(c, f)| c.to_f64().abs() * f.len().max(1) as f64 * 4f64.powi(f.len().saturating_sub(1) as i32))
        .sum();
    let factor_tol = tol / (2.0 * weight.max(1.0));
    let mut distinct: Vec<&Zeta> = Vec::new();
    for z in expr.factors() {
        if !distinct.contains(&z) {
            distinct.push(z);
        }
    }
    let values: Vec<(Float, f64)> = distinct
        .par_iter()
        .map(|z| evaluate_factor(z, factor_tol, prec))
        .collect::<Result<_, _>>()?;
    let table: HashMap<&Zeta, &(Float, f64)> = distinct.iter().copied().zip(values.iter()).collect();

    let mut value = Float::with_val(prec, 0);
    let mut bound = 0.0;
    for (c, factors) in &expr.terms {
        let mut product = Float::with_val(prec, c);
        // Π(a_i+e_i) - Π a_i <= Σ_i e_i Π_{j<i} a_j Π_{j>i} (a_j+e_j), telescoped
        // so that no tiny difference is formed in f64
        let mut error = 0.0;
        let mut exact_prefix = 1.0;
        for (i, z) in factors.iter().enumerate() {
            let (v, e) = table[z];
            product *= v;
            let padded_suffix: f64 = factors[i + 1..]
                .iter()
                .map(|w| table[w].0.to_f64().abs() + table[w].1)
                .product();
            error += e * exact_prefix * padded_suffix;
            exact_prefix *= v.to_f64().abs();
        }
        value += product;
        bound += c.to_f64().abs() * error;
    }
    bound += expr.terms.len() as f64 * 2f64.powi(8 - prec as i32);
    Ok(Evaluated { value, bound })
}

fn format_value(x: &Float) -> String {
    x.to_string_radix(10, Some(32))
}

/// Compares two expressions; optionally recognizes `lhs / π^w` as a rational
/// within `10·tol` with denominator at most `DENOMINATOR_CAP`.
fn compare(
    label: String,
    lhs: &Expression,
    rhs: &Expression,
    tol: f64,
    recognize_weight: Option<u32>,
) -> Result<NumericCheck, NumericError> {
    check_tol(tol)?;
    let prec = precision_for(tol);
    let l = evaluate(lhs, tol / 2.0, prec)?;
    let r = evaluate(rhs, tol / 2.0, prec)?;
    let difference = Float::with_val(prec, &l.value - &r.value).abs().to_f64();
    let budget = l.bound + r.bound;
    let recognized = recognize_weight.map(|w| recognize_pi_multiple(&l.value, w, tol, DENOMINATOR_CAP));
    Ok(NumericCheck {
        label,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        lhs_value: format_value(&l.value),
        rhs_value: format_value(&r.value),
        difference,
        budget,
        tol,
        recognized,
        within_tol: difference <= budget && budget <= tol,
    })
}

/// Recognizes `value / π^w` as `p/q` with `q <= cap`, within `10·tol`.
pub fn recognize_pi_multiple(value: &Float, weight: u32, tol: f64, cap: u64) -> Option<Recognized> {
    let prec = value.prec();
    let ratio = Float::with_val(prec, value / pi(prec).pow(weight));
    recognize_rational(&ratio, 10.0 * tol, cap).map(|q| Recognized { coeff: q.to_string(), pi_power: weight })
}

fn ensure_admissible<'a>(indices: impl IntoIterator<Item = &'a SignedIndex>) -> Result<(), NumericError> {
    for s in indices {
        if !s.is_admissible() {
            return Err(NumericError::Inadmissible(s.clone()));
        }
    }
    Ok(())
}

/// `ζ*(LHS) = sign · Σ_{p∈Π(base)} coeff^{depth p} ζ(p)` for a family whose
/// right-hand side uses the mollified companion that converges to `ζ`.
pub fn verify_mzsv_family(spec: &FamilySpec, tol: f64) -> Result<NumericCheck, NumericError> {
    let lhs = build_lhs(spec)?;
    let rhs = build_rhs(spec)?;
    if rhs.companion != crate::exact::Companion::Big {
        return Err(NumericError::Unsupported(format!(
            "{} has no zeta-value form (its companion does not converge to zeta)",
            spec.family
        )));
    }
    let sum = pi_expand_weighted(&rhs.base, rhs.coeff_base, rhs.sign)?;
    ensure_admissible(std::iter::once(&lhs).chain(sum.iter().map(|(p, _)| p)))?;
    let label = format!("{} a={:?} b={:?} c={:?} t={}", spec.family, spec.a, spec.b, spec.c, spec.t);
    compare(label, &Expression::from_formal(&FormalSum::single(lhs, 1), true), &Expression::from_formal(&sum, false), tol, None)
}

pub fn verify_zeta_display(display: &ZetaDisplay, tol: f64) -> Result<NumericCheck, NumericError> {
    ensure_admissible(std::iter::once(&display.lhs).chain(display.rhs.iter().map(|(p, _)| p)))?;
    compare(
        display.name.clone(),
        &Expression::from_formal(&FormalSum::single(display.lhs.clone(), 1), true),
        &Expression::from_formal(&display.rhs, false),
        tol,
        None,
    )
}

fn repeated(block: &[i64], times: usize) -> Vec<i64> {
    block.iter().copied().cycle().take(block.len() * times).collect()
}

fn index(parts: Vec<i64>) -> SignedIndex {
    SignedIndex::new(parts).expect("parts are nonzero")
}

fn single(z: Zeta) -> Expression {
    let mut e = Expression::new();
    e.add(1, vec![z]);
    e
}

fn require_positive(what: &'static str, n: u32) -> Result<(), NumericError> {
    if n == 0 {
        Err(NumericError::Unsupported(format!("{what} must be at least 1")))
    } else {
        Ok(())
    }
}

/// `ζ*({2}^n) = -2ζ(-2n)`.
pub fn check_zlobin(n: u32, tol: f64) -> Result<NumericCheck, NumericError> {
    require_positive("n", n)?;
    let lhs = single(Zeta::star(index(vec![2; n as usize])));
    let mut rhs = Expression::new();
    rhs.add(-2, vec![Zeta::plain(index(vec![-2 * n as i64]))]);
    compare(format!("zlobin n={n}"), &lhs, &rhs, tol, None)
}

/// `ζ({3}^n) = 8^n ζ({-2,1}^n)`.
pub fn check_three_n(n: u32, tol: f64) -> Result<NumericCheck, NumericError> {
    require_positive("n", n)?;
    let lhs = single(Zeta::plain(index(vec![3; n as usize])));
    let mut rhs = Expression::new();
    rhs.add(Integer::from(8).pow(n), vec![Zeta::plain(index(repeated(&[-2, 1], n as usize)))]);
    compare(format!("three-n n={n}"), &lhs, &rhs, tol, None)
}

/// All orderings of `0..len` in lexicographic order.
fn permutations(len: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; len], &mut out);
    out
}

/// Unordered set partitions of `0..len`, each once, via restricted growth
/// strings.
pub fn set_partitions(len: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, labels: &mut Vec<usize>, blocks: usize, len: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == len {
            let mut parts = vec![Vec::new(); blocks];
            for (element, &b) in labels.iter().enumerate() {
                parts[b].push(element);
            }
            out.push(parts);
            return;
        }
        for b in 0..=blocks {
            labels.push(b);
            go(i + 1, labels, blocks.max(b + 1), len, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    go(0, &mut Vec::new(), 0, len, &mut out);
    out
}

fn check_permuted_len(len: usize) -> Result<(), NumericError> {
    if len > MAX_PERMUTED {
        Err(NumericError::OutOfRange { what: "permutation length", value: len, max: MAX_PERMUTED })
    } else {
        Ok(())
    }
}

/// `Σ_{g∈S_ℓ} ζ(n_g) = Σ_{set partitions} (-1)^{ℓ-p} Π(|B|-1)! Π ζ(⊕B)`
/// for even arguments, plus recognition of the value as a rational multiple
/// of `π^{Σ|n_i|}`.
pub fn hoffman_symmetric_check(args: &[i64], tol: f64) -> Result<NumericCheck, NumericError> {
    if args.is_empty() {
        return Err(NumericError::Unsupported("at least one argument is needed".into()));
    }
    check_permuted_len(args.len())?;
    if let Some(&odd) = args.iter().find(|&&a| a % 2 != 0) {
        return Err(NumericError::OddPart(odd));
    }
    let len = args.len();
    let mut lhs = Expression::new();
    for g in permutations(len) {
        lhs.add(1, vec![Zeta::plain(index(g.iter().map(|&i| args[i]).collect()))]);
    }
    let mut rhs = Expression::new();
    for partition in set_partitions(len) {
        let p = partition.len();
        let mut coeff = Integer::from(if (len - p) % 2 == 0 { 1 } else { -1 });
        let mut factors = Vec::with_capacity(p);
        for block in &partition {
            coeff *= Integer::factorial(block.len() as u32 - 1).complete();
            let parts: Vec<i64> = block.iter().map(|&i| args[i]).collect();
            factors.push(Zeta::plain(index(vec![merge_all(&parts)])));
        }
        rhs.add(coeff, factors);
    }
    let weight: u32 = args.iter().map(|a| a.unsigned_abs() as u32).sum();
    let label = format!("hoffman {:?}", args);
    compare(label, &lhs, &rhs, tol, Some(weight))
}

/// Weak compositions of `total` into `parts` nonnegative parts, in
/// lexicographic order.
pub fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in weak_compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `({2}^{e_1}, x_1, {2}^{e_2}, x_2, …)` with separators cycling through
/// `pattern`; one separator follows each of the first `pattern_count` runs.
fn interleave(e: &[u32], pattern: &[i64], pattern_count: usize) -> Vec<i64> {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        parts.extend(std::iter::repeat(2).take(k as usize));
        if i < pattern_count {
            parts.push(pattern[i % pattern.len()]);
        }
    }
    parts
}

/// Exact coefficient of `π^{4r+2m}` in the Yamamoto evaluation of
/// `Σ_{e_0+…+e_{2r}=m} ζ*({2}^{e_0},3,{2}^{e_1},1,…,3,{2}^{e_{2r-1}},1,{2}^{e_{2r}})`.
pub fn yamamoto_rhs(r: u32, m: u32) -> Result<Rational, NumericError> {
    require_positive("r", r)?;
    let table = BernoulliTable::new(2 * (2 * r + m) as usize);
    let binom = |n: u32, k: u32| Rational::from(Integer::from(n).binomial(k));
    let mut total = Rational::new();
    for i in 0..=r {
        for k in 0..=(2 * r - 2 * i) {
            let u = 2 * r - 2 * i - k;
            for j in 0..=m {
                for l in 0..=(m - j) {
                    let v = m - j - l;
                    let mut term = binom(k + l, k) * binom(u + v, u) * binom(2 * i + j, j);
                    term *= table.beta((k + l) as usize)?;
                    term *= table.beta((u + v) as usize)?;
                    term /= Integer::from(2 * i + 1) * Integer::factorial(4 * i + 2 * j + 1).complete();
                    if (j + k) % 2 == 1 {
                        term = -term;
                    }
                    total += term;
                }
            }
        }
    }
    Ok(total)
}

/// Compares a numeric expression with `coeff · π^w` and recognizes the
/// numeric side.
fn compare_with_pi(label: String, lhs: &Expression, coeff: &Rational, weight: u32, tol: f64) -> Result<NumericCheck, NumericError> {
    check_tol(tol)?;
    let prec = precision_for(tol);
    let l = evaluate(lhs, tol / 2.0, prec)?;
    let rhs_value = Float::with_val(prec, coeff * pi(prec).pow(weight));
    let difference = Float::with_val(prec, &l.value - &rhs_value).abs().to_f64();
    let budget = l.bound + 2f64.powi(8 - prec as i32);
    let recognized = recognize_pi_multiple(&l.value, weight, tol, DENOMINATOR_CAP);
    let matches = recognized.as_ref().map_or(true, |q| q.coeff == coeff.to_string());
    Ok(NumericCheck {
        label,
        lhs: lhs.to_string(),
        rhs: format!("{coeff} * pi^{weight}"),
        lhs_value: format_value(&l.value),
        rhs_value: format_value(&rhs_value),
        difference,
        budget,
        tol,
        recognized: Some(recognized),
        within_tol: difference <= budget && budget <= tol && matches,
    })
}

fn yamamoto_lhs(r: u32, m: u32) -> Expression {
    let mut e = Expression::new();
    for comp in weak_compositions(m, 2 * r as usize + 1) {
        e.add(1, vec![Zeta::star(index(interleave(&comp, &[3, 1], 2 * r as usize)))]);
    }
    e
}

pub fn verify_yamamoto(r: u32, m: u32, tol: f64) -> Result<NumericCheck, NumericError> {
    let coeff = yamamoto_rhs(r, m)?;
    compare_with_pi(format!("yamamoto r={r} m={m}"), &yamamoto_lhs(r, m), &coeff, 4 * r + 2 * m, tol)
}

/// Muneta's coefficient of `π^{4n}` in `ζ*({3,1}^n)`.
pub fn muneta(n: u32) -> Result<Rational, NumericError> {
    require_positive("n", n)?;
    let table = BernoulliTable::new(4 * n as usize);
    let f = |k: u32| -> Result<Rational, NumericError> {
        let b = table.get(2 * k as usize)?;
        let factor = Integer::from(Integer::u_pow_u(2, 2 * k).complete()) - 2u32;
        Ok(Rational::from(b * factor) / Integer::factorial(2 * k).complete())
    };
    let mut total = Rational::new();
    for i in 0..=n {
        let mut inner = Rational::new();
        let s = 2 * (n - i);
        for n1 in 0..=s {
            let term = f(s - n1)? * f(n1)?;
            if n1 % 2 == 1 {
                inner -= term;
            } else {
                inner += term;
            }
        }
        total += inner * Rational::from((2, Integer::factorial(4 * i + 2).complete()));
    }
    Ok(total)
}

pub fn verify_muneta(n: u32, tol: f64) -> Result<NumericCheck, NumericError> {
    let coeff = muneta(n)?;
    let lhs = single(Zeta::star(index(repeated(&[3, 1], n as usize))));
    compare_with_pi(format!("muneta n={n}"), &lhs, &coeff, 4 * n, tol)
}

/// The three identities that together settle the symmetric-sum conjecture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "part")]
pub enum IttwCase {
    /// `ζ*({2}^n,3,{2}^m,1) + ζ*({2}^m,3,{2}^n,1) = ζ*({2}^{n+1}) ζ*({2}^{m+1})`.
    I { n: u32, m: u32 },
    /// `(2n+1) ζ*({3,1}^n,2) = Σ_{j+k=n} ζ*({3,1}^j) ζ*({2}^{2k+1})`.
    Ii { n: u32 },
    /// `Σ_{e_1+…+e_{2n}=1} ζ*({2}^{e_1},3,{2}^{e_2},1,…) = Σ_{j+k=n-1} ζ*({3,1}^j,2) ζ*({2}^{2k+2})`.
    Iii { n: u32 },
}

impl fmt::Display for IttwCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IttwCase::I { n, m } => write!(f, "ittw (i) n={n} m={m}"),
            IttwCase::Ii { n } => write!(f, "ittw (ii) n={n}"),
            IttwCase::Iii { n } => write!(f, "ittw (iii) n={n}"),
        }
    }
}

fn twos(k: u32) -> Vec<i64> {
    vec![2; k as usize]
}

pub fn verify_ittw_conj2(case: IttwCase, tol: f64) -> Result<NumericCheck, NumericError> {
    let (mut lhs, mut rhs) = (Expression::new(), Expression::new());
    match case {
        IttwCase::I { n, m } => {
            lhs.add(1, vec![Zeta::star(index(interleave(&[n, m], &[3, 1], 2)))]);
            lhs.add(1, vec![Zeta::star(index(interleave(&[m, n], &[3, 1], 2)))]);
            rhs.add(1, vec![Zeta::star(index(twos(n + 1))), Zeta::star(index(twos(m + 1)))]);
        }
        IttwCase::Ii { n } => {
            require_positive("n", n)?;
            let mut parts = repeated(&[3, 1], n as usize);
            parts.push(2);
            lhs.add(2 * n + 1, vec![Zeta::star(index(parts))]);
            for j in 0..=n {
                let k = n - j;
                let mut factors = vec![Zeta::star(index(twos(2 * k + 1)))];
                if j > 0 {
                    factors.insert(0, Zeta::star(index(repeated(&[3, 1], j as usize))));
                }
                rhs.add(1, factors);
            }
        }
        IttwCase::Iii { n } => {
            require_positive("n", n)?;
            for e in weak_compositions(1, 2 * n as usize) {
                lhs.add(1, vec![Zeta::star(index(interleave(&e, &[3, 1], 2 * n as usize)))]);
            }
            for j in 0..n {
                let k = n - 1 - j;
                let mut parts = repeated(&[3, 1], j as usize);
                parts.push(2);
                rhs.add(1, vec![Zeta::star(index(parts)), Zeta::star(index(twos(2 * k + 2)))]);
            }
        }
    }
    compare(case.to_string(), &lhs, &rhs, tol, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem81Part {
    I,
    Ii,
}

/// Permutation sums of `ζ*({2}^{e_τ(1)},3,{2}^{e_τ(2)},1,…)` (part i, `2r`
/// exponents) or the same with a trailing `{2}^{e_τ(2r+1)+1}` (part ii,
/// `2r+1` exponents). Passes when the sum divided by `π^{2m+4r}` (`+2` in
/// part ii) is recognized as a rational.
pub fn verify_theorem81(part: Theorem81Part, e: &[u32], tol: f64) -> Result<NumericCheck, NumericError> {
    let len = e.len();
    let r = match part {
        Theorem81Part::I if len >= 2 && len % 2 == 0 => len / 2,
        Theorem81Part::Ii if len >= 3 && len % 2 == 1 => (len - 1) / 2,
        _ => {
            return Err(NumericError::Unsupported(format!(
                "part {part:?} needs r >= 1, got {len} exponents"
            )))
        }
    };
    check_permuted_len(len)?;
    let mut lhs = Expression::new();
    for tau in permutations(len) {
        let mut exps: Vec<u32> = tau.iter().map(|&i| e[i]).collect();
        if part == Theorem81Part::Ii {
            *exps.last_mut().expect("len >= 3") += 1;
        }
        lhs.add(1, vec![Zeta::star(index(interleave(&exps, &[3, 1], 2 * r)))]);
    }
    let m: u32 = e.iter().sum();
    let weight = 2 * m + 4 * r as u32 + if part == Theorem81Part::Ii { 2 } else { 0 };
    check_tol(tol)?;
    let prec = precision_for(tol);
    let l = evaluate(&lhs, tol, prec)?;
    let recognized = recognize_pi_multiple(&l.value, weight, tol, DENOMINATOR_CAP);
    Ok(NumericCheck {
        label: format!("permutation sum part {part:?} e={e:?}").to_lowercase(),
        lhs: lhs.to_string(),
        rhs: format!("q * pi^{weight}"),
        lhs_value: format_value(&l.value),
        rhs_value: recognized.as_ref().map_or_else(|| "unrecognized".to_string(), |q| q.to_string()),
        difference: 0.0,
        budget: l.bound,
        tol,
        within_tol: l.bound <= tol,
        recognized: Some(recognized),
    })
}
