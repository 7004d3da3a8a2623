//! Builders and exact verifiers for the MHS identity families.
//!
//! Every family states `H*_n(s) = sign · Σ_{p ∈ Π(base)} coeff^depth(p) · companion_n(p)`
//! for a parameterized argument `s` and base index. [`build_lhs`] and
//! [`build_rhs`] produce the two ingredients; the verifiers compare them exactly.

pub mod displays;
pub mod lemma31;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::scaled::ScaledContext;
use crate::exact::{mhs_star, Companion, MhsEngine};
use crate::index::{pi_expand_weighted, SignedIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    TwoOne,
    TwoOneTwo,
    C21,
    OneC21,
    C212,
    OneC212,
    TwoOneC2,
    C2TwoOneC2,
    OnesC,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::TwoOne,
        Family::TwoOneTwo,
        Family::C21,
        Family::OneC21,
        Family::C212,
        Family::OneC212,
        Family::TwoOneC2,
        Family::C2TwoOneC2,
        Family::OnesC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::TwoOne => "two-one",
            Family::TwoOneTwo => "two-one-two",
            Family::C21 => "c21",
            Family::OneC21 => "one-c21",
            Family::C212 => "c212",
            Family::OneC212 => "one-c212",
            Family::TwoOneC2 => "two-one-c2",
            Family::C2TwoOneC2 => "c2-two-one-c2",
            Family::OnesC => "ones-c",
        }
    }

    /// Smallest allowed `r`.
    pub fn min_r(self) -> usize {
        match self {
            Family::TwoOneTwo | Family::OneC21 | Family::OneC212 | Family::C2TwoOneC2 => 0,
            _ => 1,
        }
    }

    /// Lengths of the `a`, `b` and `c` vectors for a given `r`.
    pub fn lengths(self, r: usize) -> (usize, usize, usize) {
        match self {
            Family::TwoOne => (r, 0, 0),
            Family::TwoOneTwo => (r + 1, 0, 0),
            Family::C21 | Family::C212 | Family::TwoOneC2 => (r, r, r),
            Family::OneC21 | Family::OneC212 => (r + 1, r, r),
            Family::C2TwoOneC2 => (r, r + 1, r + 1),
            Family::OnesC => (r, 0, r),
        }
    }

    fn uses_t(self) -> bool {
        matches!(
            self,
            Family::C212 | Family::OneC212 | Family::TwoOneC2 | Family::C2TwoOneC2 | Family::OnesC
        )
    }

    fn min_c(self) -> u32 {
        if self == Family::OnesC {
            1
        } else {
            3
        }
    }

    /// Companion and `(coeff_base, sign)` of the right-hand side.
    pub fn rhs_shape(self) -> (Companion, i64, i64) {
        match self {
            Family::TwoOne | Family::C21 | Family::OneC21 => (Companion::Big, 2, 1),
            Family::OnesC => (Companion::Small, 1, -1),
            _ => (Companion::Big, 2, -1),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("{family}: {constraint}")]
    Invalid { family: Family, constraint: String },
}

/// A family together with its parameter vectors. `r` is implied by the lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub c: Vec<u32>,
    pub t: u32,
}

impl FamilySpec {
    pub fn new(family: Family, a: Vec<u32>, b: Vec<u32>, c: Vec<u32>, t: u32) -> Self {
        FamilySpec { family, a, b, c, t }
    }

    fn invalid(&self, constraint: impl Into<String>) -> FamilyError {
        FamilyError::Invalid { family: self.family, constraint: constraint.into() }
    }

    /// The repetition count `r`, derived from the parameter lengths.
    pub fn r(&self) -> usize {
        match self.family {
            Family::TwoOne | Family::OnesC => self.a.len(),
            Family::TwoOneTwo | Family::OneC21 | Family::OneC212 => self.a.len().saturating_sub(1),
            Family::C21 | Family::C212 | Family::TwoOneC2 => self.b.len(),
            Family::C2TwoOneC2 => self.a.len(),
        }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let f = self.family;
        let r = self.r();
        if self.family == Family::TwoOneTwo || self.family == Family::OneC21 || self.family == Family::OneC212 {
            if self.a.is_empty() {
                return Err(self.invalid("a must have r+1 entries"));
            }
        }
        if r < f.min_r() {
            return Err(self.invalid(format!("r = {r} but r >= {} is required", f.min_r())));
        }
        let (la, lb, lc) = f.lengths(r);
        for (name, got, want) in [("a", self.a.len(), la), ("b", self.b.len(), lb), ("c", self.c.len(), lc)] {
            if got != want {
                return Err(self.invalid(format!("{name} has {got} entries, expected {want} for r = {r}")));
            }
        }
        for (j, &c) in self.c.iter().enumerate() {
            if c < f.min_c() {
                return Err(self.invalid(format!("c_{} = {c} violates c_j >= {}", j + 1, f.min_c())));
            }
        }
        match f {
            Family::TwoOne if self.a[0] < 1 => return Err(self.invalid("a_1 = 0 violates a_1 >= 1")),
            Family::TwoOneTwo if self.a[r] < 1 => {
                return Err(self.invalid(format!("a_{} = 0 violates a_(r+1) >= 1", r + 1)))
            }
            Family::C212 | Family::OneC212 if self.t < 1 => {
                return Err(self.invalid("t = 0 violates t >= 1"))
            }
            _ => {}
        }
        if !f.uses_t() && self.t != 0 {
            return Err(self.invalid(format!("t = {} is not a parameter of this family", self.t)));
        }
        Ok(())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{} a=({}) b=({}) c=({}) t={}", self.family, list(&self.a), list(&self.b), list(&self.c), self.t)
    }
}

fn push_repeated(out: &mut Vec<i64>, part: i64, count: u32) {
    out.extend(std::iter::repeat(part).take(count as usize));
}

/// `({2}^b_j, c_j, {2}^a_j, 1)` for `j` in `range`.
fn push_c21_blocks(out: &mut Vec<i64>, spec: &FamilySpec, range: std::ops::Range<usize>) {
    for j in range {
        push_repeated(out, 2, spec.b[j]);
        out.push(spec.c[j] as i64);
        push_repeated(out, 2, spec.a[j]);
        out.push(1);
    }
}

/// The argument `s` of `H*_n(s)`, with every string of 2's and 1's written out.
pub fn build_lhs(spec: &FamilySpec) -> Result<SignedIndex, FamilyError> {
    spec.validate()?;
    let r = spec.r();
    let mut s = Vec::new();
    match spec.family {
        Family::TwoOne | Family::TwoOneTwo => {
            for &a in &spec.a[..r] {
                push_repeated(&mut s, 2, a);
                s.push(1);
            }
            if spec.family == Family::TwoOneTwo {
                push_repeated(&mut s, 2, spec.a[r]);
            }
        }
        Family::C21 | Family::C212 => {
            push_c21_blocks(&mut s, spec, 0..r);
            push_repeated(&mut s, 2, spec.t);
        }
        Family::OneC21 | Family::OneC212 => {
            push_repeated(&mut s, 2, spec.a[0]);
            s.push(1);
            for j in 0..r {
                push_repeated(&mut s, 2, spec.b[j]);
                s.push(spec.c[j] as i64);
                push_repeated(&mut s, 2, spec.a[j + 1]);
                s.push(1);
            }
            push_repeated(&mut s, 2, spec.t);
        }
        Family::TwoOneC2 => {
            for j in 0..r {
                push_repeated(&mut s, 2, spec.a[j]);
                s.push(1);
                push_repeated(&mut s, 2, spec.b[j]);
                s.push(spec.c[j] as i64);
            }
            push_repeated(&mut s, 2, spec.t);
        }
        Family::C2TwoOneC2 => {
            push_c21_blocks(&mut s, spec, 0..r);
            push_repeated(&mut s, 2, spec.b[r]);
            s.push(spec.c[r] as i64);
            push_repeated(&mut s, 2, spec.t);
        }
        Family::OnesC => {
            for j in 0..r {
                push_repeated(&mut s, 1, spec.a[j]);
                s.push(spec.c[j] as i64);
            }
            push_repeated(&mut s, 1, spec.t);
        }
    }
    Ok(SignedIndex::new(s).expect("family parts are positive"))
}

/// Right-hand side of a family: `sign · Σ_{p ∈ Π(base)} coeff_base^depth(p) · companion_n(p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhsSpec {
    pub base: SignedIndex,
    pub coeff_base: i64,
    pub sign: i64,
    pub companion: Companion,
}

/// Assembles a base index. A run `{1}^-1` (from `c = 1` in the ones family)
/// cancels one unit: its neighbours merge as `sgn(x)sgn(y)(|x|+|y|-1)`.
#[derive(Default)]
struct BaseBuilder {
    parts: Vec<i64>,
    contract_next: bool,
}

impl BaseBuilder {
    fn push(&mut self, p: i64) {
        if std::mem::take(&mut self.contract_next) {
            let x = self.parts.pop().expect("contraction needs a left neighbour");
            let magnitude = x.abs() + p.abs() - 1;
            self.parts.push(x.signum() * p.signum() * magnitude);
        } else {
            self.parts.push(p);
        }
    }

    fn ones(&mut self, count: i64) {
        if count < 0 {
            debug_assert_eq!(count, -1);
            self.contract_next = true;
        }
        for _ in 0..count.max(0) {
            self.push(1);
        }
    }

    /// `(2b+2‾, {1}^{c-3}, 2a+2‾)`.
    fn c21_block(&mut self, a: u32, b: u32, c: u32) {
        self.push(-(2 * b as i64 + 2));
        self.ones(c as i64 - 3);
        self.push(-(2 * a as i64 + 2));
    }

    fn finish(self) -> SignedIndex {
        assert!(!self.contract_next, "dangling contraction");
        SignedIndex::new(self.parts).expect("base parts are nonzero")
    }
}

pub fn build_rhs(spec: &FamilySpec) -> Result<RhsSpec, FamilyError> {
    spec.validate()?;
    let r = spec.r();
    let (a, b, c, t) = (&spec.a, &spec.b, &spec.c, spec.t as i64);
    let mut base = BaseBuilder::default();
    match spec.family {
        Family::TwoOne | Family::TwoOneTwo => {
            for &aj in &a[..r] {
                base.push(2 * aj as i64 + 1);
            }
            if spec.family == Family::TwoOneTwo {
                base.push(-2 * a[r] as i64);
            }
        }
        Family::C21 | Family::C212 => {
            for j in 0..r {
                base.c21_block(a[j], b[j], c[j]);
            }
        }
        Family::OneC21 | Family::OneC212 => {
            base.push(2 * a[0] as i64 + 1);
            for j in 0..r {
                base.c21_block(a[j + 1], b[j], c[j]);
            }
        }
        Family::TwoOneC2 => {
            base.push(2 * a[0] as i64 + 1);
            for j in 0..r {
                if j > 0 {
                    base.push(-(2 * a[j] as i64 + 2));
                }
                base.push(-(2 * b[j] as i64 + 2));
                base.ones(c[j] as i64 - 3);
            }
            base.push(2 * t + 1);
        }
        Family::C2TwoOneC2 => {
            for j in 0..r {
                base.c21_block(a[j], b[j], c[j]);
            }
            base.push(-(2 * b[r] as i64 + 2));
            base.ones(c[r] as i64 - 3);
            base.push(2 * t + 1);
        }
        Family::OnesC => {
            base.push(-(a[0] as i64 + 1));
            base.ones(c[0] as i64 - 2);
            for j in 1..r {
                base.push(a[j] as i64 + 2);
                base.ones(c[j] as i64 - 2);
            }
            base.push(t + 1);
        }
    }
    if matches!(spec.family, Family::C212 | Family::OneC212) {
        base.push(-2 * t);
    }
    let (companion, coeff_base, sign) = spec.family.rhs_shape();
    Ok(RhsSpec { base: base.finish(), coeff_base, sign, companion })
}

/// Outcome of one `(spec, n)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceReport {
    pub n: u64,
    pub lhs: Rational,
    pub rhs: Rational,
    pub equal: bool,
    pub elapsed_ms: f64,
}

/// Checks one cell by expanding `Π(base)` explicitly and summing companions.
pub fn verify_instance_with(
    engine: &MhsEngine,
    spec: &FamilySpec,
    n: u64,
) -> Result<InstanceReport, FamilyError> {
    assert!(n >= 1, "n must be positive");
    let start = Instant::now();
    let s = build_lhs(spec)?;
    let rhs_spec = build_rhs(spec)?;
    let lhs = engine.mhs_star(n, &s);
    let expansion = pi_expand_weighted(&rhs_spec.base, rhs_spec.coeff_base, rhs_spec.sign)
        .expect("base is nonempty");
    let mut rhs = Rational::new();
    for (p, coeff) in expansion.iter() {
        let value = engine.mollified(rhs_spec.companion, n, p).expect("nonempty index, n >= 1");
        rhs += value * Integer::from(coeff);
    }
    let equal = lhs == rhs;
    Ok(InstanceReport { n, lhs, rhs, equal, elapsed_ms: start.elapsed().as_secs_f64() * 1e3 })
}

pub fn verify_instance(spec: &FamilySpec, n: u64) -> Result<InstanceReport, FamilyError> {
    verify_instance_with(&MhsEngine::new(n as usize, 1 << 10), spec, n)
}

/// Checks `n = 1..=ctx.n_max()` for one spec through the integer-scaled engine.
pub fn verify_range(ctx: &ScaledContext, spec: &FamilySpec) -> Result<Vec<InstanceReport>, FamilyError> {
    let start = Instant::now();
    let s = build_lhs(spec)?;
    let rhs = build_rhs(spec)?;
    let cells = ctx.compare(&s, &rhs.base, rhs.coeff_base, rhs.sign, rhs.companion);
    let per_cell = start.elapsed().as_secs_f64() * 1e3 / cells.len().max(1) as f64;
    Ok(cells
        .into_iter()
        .map(|cell| InstanceReport {
            n: cell.n,
            lhs: cell.lhs(),
            rhs: cell.rhs(),
            equal: cell.equal(),
            elapsed_ms: per_cell,
        })
        .collect())
}

/// Parameter ceilings for a sweep. Every combination inside the box is
/// generated and the ones violating a family constraint are skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRanges {
    pub r_max: usize,
    pub a_max: u32,
    pub b_max: u32,
    pub c_values: Vec<u32>,
    pub t_max: u32,
}

fn product(lengths: usize, values: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..lengths {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

/// All valid specs of `family` inside `ranges`, in a fixed order
/// (by `r`, then `a`, `b`, `c`, `t` lexicographically).
pub fn enumerate_specs(family: Family, ranges: &SweepRanges) -> Vec<FamilySpec> {
    let a_values: Vec<u32> = (0..=ranges.a_max).collect();
    let b_values: Vec<u32> = (0..=ranges.b_max).collect();
    let t_max = if family.uses_t() { ranges.t_max } else { 0 };
    let mut specs = Vec::new();
    for r in family.min_r()..=ranges.r_max {
        let (la, lb, lc) = family.lengths(r);
        for a in product(la, &a_values) {
            for b in product(lb, &b_values) {
                for c in product(lc, &ranges.c_values) {
                    for t in 0..=t_max {
                        let spec = FamilySpec::new(family, a.clone(), b.clone(), c.clone(), t);
                        if spec.validate().is_ok() {
                            specs.push(spec);
                        }
                    }
                }
            }
        }
    }
    specs
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepFailure {
    pub spec: FamilySpec,
    pub n: u64,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub family: Family,
    pub n_max: u64,
    pub specs: usize,
    pub cells: usize,
    pub passed: usize,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.cells > 0
    }
}

/// Runs every spec of `family` inside `ranges` for `n = 1..=ctx.n_max()` on
/// the current rayon pool. Failures come back in enumeration order.
pub fn verify_sweep(ctx: &ScaledContext, family: Family, ranges: &SweepRanges) -> SweepReport {
    let specs = enumerate_specs(family, ranges);
    let per_spec: Vec<(usize, Vec<SweepFailure>)> = specs
        .par_iter()
        .map(|spec| {
            let s = build_lhs(spec).expect("enumerated specs are valid");
            let rhs = build_rhs(spec).expect("enumerated specs are valid");
            let cells = ctx.compare(&s, &rhs.base, rhs.coeff_base, rhs.sign, rhs.companion);
            let failures = cells
                .iter()
                .filter(|c| !c.equal())
                .map(|c| SweepFailure { spec: spec.clone(), n: c.n, lhs: c.lhs(), rhs: c.rhs() })
                .collect();
            (cells.len(), failures)
        })
        .collect();
    let cells: usize = per_spec.iter().map(|(n, _)| n).sum();
    let failures: Vec<SweepFailure> = per_spec.into_iter().flat_map(|(_, f)| f).collect();
    SweepReport {
        family,
        n_max: ctx.n_max() as u64,
        specs: specs.len(),
        cells,
        passed: cells - failures.len(),
        failures,
    }
}

/// Both sides of `H*_n({1}^a, 1‾) = Σ_{k=1}^n (2^k - 1)(-1)^k C(n,k) / k^(a+1)`.
pub fn ones_bar_one_sides(a: u32, n: u64) -> (Rational, Rational) {
    let mut parts = vec![1i64; a as usize];
    parts.push(-1);
    let lhs = mhs_star(n, &SignedIndex::new(parts).expect("nonzero parts"));
    let mut rhs = Rational::new();
    for k in 1..=n {
        let mut num = (Integer::from(1) << k as u32) - 1u32;
        num *= Integer::from(n).binomial(k as u32);
        if k % 2 == 1 {
            num = -num;
        }
        rhs += Rational::from((num, Integer::from(k).pow(a + 1)));
    }
    (lhs, rhs)
}

pub fn check_ones_bar_one(a: u32, n: u64) -> bool {
    let (lhs, rhs) = ones_bar_one_sides(a, n);
    lhs == rhs
}
