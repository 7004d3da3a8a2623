//! Exact rational evaluation of multiple harmonic sums and their mollified
//! companions.
//!
//! Conventions: `H_n(∅) = H*_n(∅) = 1` for every `n`, and a nonempty index
//! evaluates to `0` whenever `n` is smaller than its depth (in particular at
//! `n = 0`).

mod binomial;
mod engine;
pub mod identities;
pub mod oracle;
pub mod scaled;

pub use binomial::BinomialCache;
pub use engine::MhsEngine;

use rug::ops::Pow;
use rug::{Integer, Rational};
use thiserror::Error;

use crate::index::SignedIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("mollified sums need a nonempty index")]
    EmptyIndex,
    #[error("mollified sums need n >= 1")]
    ZeroN,
    #[error("oracle guard: {0}")]
    OracleGuard(String),
}

/// Which binomial weight a mollified sum carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Companion {
    /// Weight `C(n,k) / C(n+k,k)`.
    Big,
    /// Weight `C(n,k)`.
    Small,
}

/// `sgn(part)^k / k^|part|`.
pub fn term(part: i64, k: u64) -> Rational {
    let den = Integer::from(k).pow(part.unsigned_abs() as u32);
    let num = if part < 0 && k % 2 == 1 { -1 } else { 1 };
    Rational::from((Integer::from(num), den))
}

/// `H_k(s)` (or `H*_k(s)` when `star`) for every `k` in `0..=n`.
pub fn mhs_table(n: usize, s: &SignedIndex, star: bool) -> Vec<Rational> {
    let mut current = vec![Rational::from(1); n + 1];
    for &part in s.parts().iter().rev() {
        let mut next = vec![Rational::new(); n + 1];
        for k in 1..=n {
            let inner = if star { &current[k] } else { &current[k - 1] };
            let step = term(part, k as u64) * inner;
            next[k] = Rational::from(&next[k - 1] + &step);
        }
        current = next;
    }
    current
}

pub fn mhs(n: u64, s: &SignedIndex) -> Rational {
    if s.is_empty() {
        return Rational::from(1);
    }
    if (n as usize) < s.depth() {
        return Rational::new();
    }
    mhs_table(n as usize, s, false).pop().expect("table has n+1 entries")
}

pub fn mhs_star(n: u64, s: &SignedIndex) -> Rational {
    if s.is_empty() {
        return Rational::from(1);
    }
    mhs_table(n as usize, s, true).pop().expect("table has n+1 entries")
}

/// The binomial weight of a mollified sum at `(n, k)`.
pub fn companion_weight(companion: Companion, n: u64, k: u64) -> Rational {
    let c = Integer::from(n).binomial(k as u32);
    match companion {
        Companion::Small => Rational::from(c),
        Companion::Big => Rational::from((c, Integer::from(n + k).binomial(k as u32))),
    }
}

/// `Σ_{k=1}^n sgn(s1)^k/k^|s1| · w(n,k) · H_{k-1}(s2,…,sm)`.
pub fn mollified(companion: Companion, n: u64, s: &SignedIndex) -> Result<Rational, EvalError> {
    let (&head, _) = s.parts().split_first().ok_or(EvalError::EmptyIndex)?;
    if n == 0 {
        return Err(EvalError::ZeroN);
    }
    let inner = mhs_table(n as usize, &s.tail(), false);
    let mut total = Rational::new();
    for k in 1..=n {
        let inner_value = &inner[(k - 1) as usize];
        if *inner_value == 0 {
            continue;
        }
        total += term(head, k) * companion_weight(companion, n, k) * inner_value;
    }
    Ok(total)
}

pub fn mollified_big(n: u64, s: &SignedIndex) -> Result<Rational, EvalError> {
    mollified(Companion::Big, n, s)
}

pub fn mollified_small(n: u64, s: &SignedIndex) -> Result<Rational, EvalError> {
    mollified(Companion::Small, n, s)
}
