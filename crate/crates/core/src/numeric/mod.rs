//! Tolerance-controlled numeric evaluation of alternating Euler sums.
//!
//! `ζ(s)` is written as an iterated integral `(-1)^depth G(w; 1)` and the
//! Hölder convolution rewrites `G(w; 1)` through polylogarithms at `1/2`,
//! whose nested series converge geometrically with an exactly computable
//! tail. Plain partial sums with an analytic tail bound serve as the
//! independent cross-check.

mod bernoulli;
pub mod checks;
mod pi;
mod polylog;
mod recognize;

pub use bernoulli::{bernoulli, beta_coeff, BernoulliTable};
pub use checks::*;
pub use pi::pi;
pub use recognize::recognize_rational;

use rug::Float;
use thiserror::Error;

use crate::families::FamilyError;
use crate::index::{star_expand, IndexError, SignedIndex};

pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("index ({0}) is not admissible: the series diverges")]
    Inadmissible(SignedIndex),
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("{what} {value} is outside the supported range (max {max})")]
    OutOfRange { what: &'static str, value: usize, max: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("argument {0} is odd; only even arguments are allowed")]
    OddPart(i64),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Index(#[from] IndexError),
}

/// A numeric value with the error budget that justifies it.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericValue {
    pub value: Float,
    pub tol: f64,
    /// Truncation error bound (series tails).
    pub truncation: f64,
    /// Floating-point summation error bound.
    pub rounding: f64,
    pub method: &'static str,
}

impl NumericValue {
    pub fn error_bound(&self) -> f64 {
        self.truncation + self.rounding
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

/// Working precision in bits for a target tolerance.
pub fn precision_for(tol: f64) -> u32 {
    let digits = (-tol.log2()).ceil().max(0.0) as u32;
    (digits + 40).max(128)
}

fn check_tol(tol: f64) -> Result<(), NumericError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(NumericError::InvalidTolerance(tol))
    }
}

/// Bits of truncation needed so that `count` tails each of size `2^-bits`
/// stay below `budget`.
fn truncation_bits(budget: f64, count: usize) -> u32 {
    (-(budget / count as f64).log2()).ceil().max(1.0) as u32
}

pub fn zeta(s: &SignedIndex, tol: f64) -> Result<NumericValue, NumericError> {
    check_tol(tol)?;
    zeta_at(s, tol, precision_for(tol))
}

fn zeta_at(s: &SignedIndex, tol: f64, prec: u32) -> Result<NumericValue, NumericError> {
    check_tol(tol)?;
    if !s.is_admissible() {
        return Err(NumericError::Inadmissible(s.clone()));
    }
    let method = "hoelder convolution at 1/2";
    if s.is_empty() {
        return Ok(NumericValue { value: Float::with_val(prec, 1), tol, truncation: 0.0, rounding: 0.0, method });
    }
    let word = polylog::zeta_word(s.parts());
    // every convolution term contributes at most three tails
    let bits = truncation_bits(tol / 2.0, 4 * (word.len() + 1));
    let g = polylog::g_one(&word, bits, prec);
    let value = if s.depth() % 2 == 1 { -g.value } else { g.value };
    Ok(NumericValue { value, tol, truncation: g.bound, rounding: g.rounding, method })
}

/// `ζ*(s)` as the sum of `ζ` over the star expansion of `s`.
pub fn zeta_star(s: &SignedIndex, tol: f64) -> Result<NumericValue, NumericError> {
    check_tol(tol)?;
    if !s.is_admissible() {
        return Err(NumericError::Inadmissible(s.clone()));
    }
    let prec = precision_for(tol);
    let expansion = star_expand(s)?;
    let share = tol / expansion.len().max(1) as f64;
    let mut value = Float::with_val(prec, 0);
    let (mut truncation, mut rounding) = (0.0, 0.0);
    for (p, c) in expansion.iter() {
        let z = zeta_at(p, share, prec)?;
        value += Float::with_val(prec, &z.value * c);
        truncation += z.truncation * c.unsigned_abs() as f64;
        rounding += z.rounding * c.unsigned_abs() as f64;
    }
    Ok(NumericValue { value, tol, truncation, rounding, method: "star expansion over hoelder convolution" })
}

/// `H_n(s)` (or `H*_n(s)`) in floating point, with a bound on
/// `|ζ(s) - H_n(s)|`.
///
/// The bound needs `|s_1| >= 2`: the summand at `k` is at most
/// `(1+ln k)^j / (j! k^m)` with `m = |s_1|`, `j = depth - 1` (no `j!` for
/// star sums), and the tail is bounded by the integral from `n`.
pub fn zeta_partial(s: &SignedIndex, n: u64, star: bool, prec: u32) -> Result<NumericValue, NumericError> {
    let &head = s.parts().first().ok_or_else(|| NumericError::Unsupported("empty index".into()))?;
    let m = head.unsigned_abs();
    if m < 2 {
        return Err(NumericError::Unsupported(format!("partial-sum tail bound needs |s_1| >= 2, got ({s})")));
    }
    if n < 3 {
        return Err(NumericError::Unsupported("partial sums need n >= 3".into()));
    }
    let n_usize = n as usize;
    let mut current = vec![Float::with_val(prec, 1); n_usize + 1];
    for &part in s.parts().iter().rev() {
        let mut next = vec![Float::with_val(prec, 0); n_usize + 1];
        for k in 1..=n_usize {
            let inner = if star { &current[k] } else { &current[k - 1] };
            let mut step = Float::with_val(prec, inner);
            for _ in 0..part.unsigned_abs() {
                step /= k as u64;
            }
            if part < 0 && k % 2 == 1 {
                step = -step;
            }
            next[k] = Float::with_val(prec, &next[k - 1] + &step);
        }
        current = next;
    }
    let value = current.pop().expect("table has n+1 entries");

    let j = s.depth() - 1;
    let log_n = 1.0 + (n as f64).ln();
    let m1 = (m - 1) as f64;
    let mut tail = 0.0;
    let mut falling = 1.0;
    for i in 0..=j {
        tail += falling * log_n.powi((j - i) as i32) / m1.powi(i as i32 + 1);
        falling *= (j - i) as f64;
    }
    tail *= (n as f64).powf(-m1);
    if !star {
        tail /= (1..=j).map(|x| x as f64).product::<f64>();
    }
    let rounding = (s.depth() as f64) * (n as f64) * 2f64.powi(4 - prec as i32);
    Ok(NumericValue { value, tol: tail + rounding, truncation: tail, rounding, method: "partial sum with integral tail bound" })
}

#[cfg(test)]
mod tests;
