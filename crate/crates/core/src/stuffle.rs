//! The quasi-shuffle (stuffle) product and the formal coefficient identities
//! behind the `{3,1}^n` product formulas.

use thiserror::Error;

use crate::index::{merge, pi_expand_weighted, FormalSum, SignedIndex};

fn prepend(head: i64, sum: FormalSum) -> FormalSum {
    sum.iter()
        .map(|(idx, c)| {
            let mut parts = Vec::with_capacity(idx.depth() + 1);
            parts.push(head);
            parts.extend_from_slice(idx.parts());
            (SignedIndex::from_nonzero(parts), c)
        })
        .collect()
}

fn stuffle_parts(s: &[i64], t: &[i64]) -> FormalSum {
    let (Some((&a, s_rest)), Some((&b, t_rest))) = (s.split_first(), t.split_first()) else {
        let rest = if s.is_empty() { t } else { s };
        return FormalSum::single(SignedIndex::from_nonzero(rest.to_vec()), 1);
    };
    let mut out = prepend(a, stuffle_parts(s_rest, t));
    out.add_sum(&prepend(b, stuffle_parts(s, t_rest)));
    out.add_sum(&prepend(merge(a, b), stuffle_parts(s_rest, t_rest)));
    out
}

/// `s ⋆ t`, with the empty index as unit and heads merged by `⊕`.
pub fn stuffle(s: &SignedIndex, t: &SignedIndex) -> FormalSum {
    stuffle_parts(s.parts(), t.parts())
}

/// Bilinear extension of [`stuffle`].
pub fn stuffle_sums(x: &FormalSum, y: &FormalSum) -> FormalSum {
    let mut out = FormalSum::new();
    for (s, c) in x.iter() {
        for (t, d) in y.iter() {
            out.add_sum(&stuffle(s, t).scaled(c * d));
        }
    }
    out
}

pub const DEFAULT_DEPTH_CAP: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("depth {depth} exceeds the cap of {cap}")]
pub struct DepthCapExceeded {
    pub depth: usize,
    pub cap: usize,
}

/// Result of a formal identity `scale · lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddlestepReport {
    pub n: u64,
    pub lhs: FormalSum,
    pub rhs: FormalSum,
    pub scale: i64,
    /// `rhs - scale · lhs`; empty iff the identity holds.
    pub residual: FormalSum,
}

impl MiddlestepReport {
    fn new(n: u64, lhs: FormalSum, rhs: FormalSum, scale: i64) -> Self {
        let residual = rhs.difference(&lhs.scaled(scale));
        MiddlestepReport { n, lhs, rhs, scale, residual }
    }

    pub fn holds(&self) -> bool {
        self.residual.is_empty()
    }
}

fn bars(count: usize, value: i64) -> SignedIndex {
    SignedIndex::new(vec![value; count]).expect("nonzero")
}

/// `Σ_{p ∈ Π({2‾}^count)} 2^ℓ(p) p`, with the unit for `count = 0`.
fn weighted_bar_twos(count: usize) -> FormalSum {
    if count == 0 {
        return FormalSum::unit();
    }
    pi_expand_weighted(&bars(count, -2), 2, 1).expect("nonempty base")
}

fn check_cap(depth: usize, cap: usize) -> Result<(), DepthCapExceeded> {
    if depth > cap {
        Err(DepthCapExceeded { depth, cap })
    } else {
        Ok(())
    }
}

/// `(2n+1) Σ_{p ∈ Π({2‾}^{2n+1})} 2^ℓ p = Σ_{j=0}^n (Σ_{p ∈ Π({2‾}^{2j})} 2^ℓ p) ⋆ 2·(4(n-j)+2)‾`.
///
/// The factor `2n+1` on the left comes from the product formula being proved;
/// without it the two sides differ (see [`middlestep_1_unscaled_holds`]).
pub fn verify_middlestep_1(n: u64, cap: usize) -> Result<MiddlestepReport, DepthCapExceeded> {
    assert!(n >= 1, "n must be positive");
    let depth = 2 * n as usize + 1;
    check_cap(depth, cap)?;
    let lhs = weighted_bar_twos(depth);
    let mut rhs = FormalSum::new();
    for j in 0..=n {
        let single = FormalSum::single(bars(1, -(4 * (n - j) as i64 + 2)), 2);
        rhs.add_sum(&stuffle_sums(&weighted_bar_twos(2 * j as usize), &single));
    }
    Ok(MiddlestepReport::new(n, lhs, rhs, 2 * n as i64 + 1))
}

/// Whether the first identity holds with no factor on the left.
pub fn middlestep_1_unscaled_holds(n: u64, cap: usize) -> Result<bool, DepthCapExceeded> {
    let report = verify_middlestep_1(n, cap)?;
    Ok(report.lhs == report.rhs)
}

/// `Σ_q 2^ℓ(q) q = Σ_{j=0}^{n-1} (Σ_{p ∈ Π({2‾}^{2j+1})} 2^ℓ p) ⋆ 2·(4(n-j))‾`, where `q`
/// runs over `Π(A_1,…,A_{2n})` for every placement of a single `4‾` among `2‾`'s.
pub fn verify_middlestep_2(n: u64, cap: usize) -> Result<MiddlestepReport, DepthCapExceeded> {
    assert!(n >= 1, "n must be positive");
    let depth = 2 * n as usize;
    check_cap(depth, cap)?;
    let mut lhs = FormalSum::new();
    for j0 in 0..depth {
        let mut parts = vec![-2; depth];
        parts[j0] = -4;
        lhs.add_sum(&pi_expand_weighted(&SignedIndex::new(parts).expect("nonzero"), 2, 1).expect("nonempty"));
    }
    let mut rhs = FormalSum::new();
    for j in 0..n {
        let single = FormalSum::single(bars(1, -(4 * (n - j) as i64)), 2);
        rhs.add_sum(&stuffle_sums(&weighted_bar_twos(2 * j as usize + 1), &single));
    }
    Ok(MiddlestepReport::new(n, lhs, rhs, 1))
}
