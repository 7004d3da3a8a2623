//! Kernel identities for binomially weighted harmonic sums.
//!
//! With `A^(m)_{n,k} = (-1)^k C(mn, n-k) c_n` and `B^(m)_{n,k} = C(mn, n-k) c_n`,
//! where `c_n = 1` for `m = 1` and `c_n = n!^2/(2n)!` for `m = 2`:
//!
//! * (i)   `n^-c Σ H_{k-1}(v) A/k^a = Σ H_{k-1}(v) A/k^(a+c) + Σ_{j+|x|=a+c, x_r>a} m^l(x) Σ H_{k-1}(x,v) A/k^j`
//! * (ii)  `n Σ H_{k-1}(v) B/k^a = Σ H_{k-1}(v) B/k^(a-1) + 2 Σ H_{k-1}(a,v) k B` (`m = 2`)
//! * (iii) as (i) with `B` on the left and in the first sum, and `x_r < -a`
//! * (iv)  `n Σ H_{k-1}(v) A/k^a = Σ H_{k-1}(v) A/k^(a-1) + 2 Σ H_{k-1}(a‾,v) k B` (`m = 2`)
//!
//! In (i) and (iii) `x` runs over compositions whose entries are positive
//! except that in (iii) the last one is negative; `|x|` sums magnitudes.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::mhs_table;
use crate::index::SignedIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    I,
    Ii,
    Iii,
    Iv,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::I, Variant::Ii, Variant::Iii, Variant::Iv];

    /// The kernel appearing on the left-hand side.
    pub fn lhs_kernel(self) -> Kernel {
        match self {
            Variant::I | Variant::Iv => Kernel::A,
            Variant::Ii | Variant::Iii => Kernel::B,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::I => "i",
            Variant::Ii => "ii",
            Variant::Iii => "iii",
            Variant::Iv => "iv",
        })
    }
}

impl FromStr for Variant {
    type Err = KernelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.to_string() == s)
            .ok_or_else(|| KernelError(format!("unknown variant {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kernel {
    /// Signed: `(-1)^k C(mn, n-k) c_n`.
    A,
    /// Unsigned: `C(mn, n-k) c_n`.
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KernelParams {
    pub m: u32,
    pub kind: Kernel,
    pub a: u32,
    pub c: u32,
    pub v: SignedIndex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed kernel parameters: {0}")]
pub struct KernelError(String);

/// `K^(m)_{n,k}` of the given kind.
pub fn kernel(kind: Kernel, m: u32, n: u64, k: u64) -> Rational {
    let mn = m as u64 * n;
    let mut value = Rational::from(Integer::from(mn).binomial((n - k) as u32));
    if m == 2 {
        value /= Integer::from(2 * n).binomial(n as u32);
    }
    if kind == Kernel::A && k % 2 == 1 {
        value = -value;
    }
    value
}

fn validate(variant: Variant, kp: &KernelParams) -> Result<(), KernelError> {
    if kp.m != 1 && kp.m != 2 {
        return Err(KernelError(format!("m = {} must be 1 or 2", kp.m)));
    }
    if kp.kind != variant.lhs_kernel() {
        return Err(KernelError(format!(
            "variant {variant} uses kernel {:?} on the left, got {:?}",
            variant.lhs_kernel(),
            kp.kind
        )));
    }
    match variant {
        Variant::I | Variant::Iii if kp.c < 1 => Err(KernelError("c must be at least 1".into())),
        Variant::Ii | Variant::Iv if kp.m != 2 => Err(KernelError(format!("variant {variant} needs m = 2"))),
        Variant::Ii | Variant::Iv if kp.a < 1 => Err(KernelError(format!("variant {variant} needs a >= 1"))),
        _ => Ok(()),
    }
}

/// Positive compositions of `total`, one per bitmask (bit `i` set = cut after
/// position `i`), in ascending mask order.
pub fn compositions(total: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return Vec::new();
    }
    (0..1u64 << (total - 1))
        .map(|mask| {
            let mut parts = Vec::new();
            let mut run = 1;
            for i in 0..total - 1 {
                if mask >> i & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            parts
        })
        .collect()
}

/// `Σ_{k=1}^n H_{k-1}(index) K_{n,k} k^shift` (`shift` may be negative).
fn weighted_sum(n: u64, index: &SignedIndex, kind: Kernel, m: u32, shift: i64) -> Rational {
    let h = mhs_table(n as usize, index, false);
    let mut total = Rational::new();
    for k in 1..=n {
        let inner = &h[(k - 1) as usize];
        if *inner == 0 {
            continue;
        }
        let power = Integer::from(k).pow(shift.unsigned_abs() as u32);
        let scaled = if shift >= 0 {
            kernel(kind, m, n, k) * power
        } else {
            kernel(kind, m, n, k) / power
        };
        total += scaled * inner;
    }
    total
}

/// Both sides of the chosen identity at `n`.
pub fn lemma31_sides(variant: Variant, kp: &KernelParams, n: u64) -> Result<(Rational, Rational), KernelError> {
    validate(variant, kp)?;
    if n == 0 {
        return Err(KernelError("n must be positive".into()));
    }
    let (m, a, c) = (kp.m, kp.a as i64, kp.c as i64);
    let v = &kp.v;
    let sides = match variant {
        Variant::I | Variant::Iii => {
            let left_kind = variant.lhs_kernel();
            let lhs = weighted_sum(n, v, left_kind, m, -a) / Integer::from(n).pow(c as u32);
            let mut rhs = weighted_sum(n, v, left_kind, m, -(a + c));
            for j in 0..a + c {
                for x in compositions((a + c - j) as u32) {
                    let last = *x.last().expect("nonempty") as i64;
                    if last <= a {
                        continue;
                    }
                    let mut parts: Vec<i64> = x.iter().map(|&p| p as i64).collect();
                    if variant == Variant::Iii {
                        *parts.last_mut().expect("nonempty") = -last;
                    }
                    parts.extend_from_slice(v.parts());
                    let index = SignedIndex::new(parts).expect("nonzero parts");
                    let weight = Integer::from(m).pow(x.len() as u32);
                    rhs += weighted_sum(n, &index, Kernel::A, m, -j) * weight;
                }
            }
            (lhs, rhs)
        }
        Variant::Ii | Variant::Iv => {
            let kind = variant.lhs_kernel();
            let lhs = weighted_sum(n, v, kind, m, -a) * n;
            let head = if variant == Variant::Ii { a } else { -a };
            let mut parts = vec![head];
            parts.extend_from_slice(v.parts());
            let index = SignedIndex::new(parts).expect("nonzero parts");
            let rhs = weighted_sum(n, v, kind, m, 1 - a) + weighted_sum(n, &index, Kernel::B, m, 1) * 2u32;
            (lhs, rhs)
        }
    };
    Ok(sides)
}

pub fn check_lemma31(variant: Variant, kp: &KernelParams, n: u64) -> Result<bool, KernelError> {
    let (lhs, rhs) = lemma31_sides(variant, kp, n)?;
    Ok(lhs == rhs)
}

/// The standard grid of kernels: `m ∈ {1,2}` where allowed, `a, c <= 3`,
/// `v ∈ {∅, (1), (-2), (2,1)}`.
pub fn lemma31_grid_cases() -> Vec<(Variant, KernelParams)> {
    let vs = [vec![], vec![1], vec![-2], vec![2, 1]];
    let mut cases = Vec::new();
    for variant in Variant::ALL {
        let (ms, a_min, cs): (&[u32], u32, &[u32]) = match variant {
            Variant::I | Variant::Iii => (&[1, 2], 0, &[1, 2, 3]),
            Variant::Ii | Variant::Iv => (&[2], 1, &[1]),
        };
        for &m in ms {
            for a in a_min..=3 {
                for &c in cs {
                    for v in &vs {
                        let v = SignedIndex::new(v.clone()).expect("nonzero");
                        cases.push((variant, KernelParams { m, kind: variant.lhs_kernel(), a, c, v }));
                    }
                }
            }
        }
    }
    cases
}

/// Runs the standard grid for `n <= n_max`. Returns the number of cells and
/// the failing ones.
pub fn lemma31_grid(n_max: u64) -> (usize, Vec<(Variant, KernelParams, u64)>) {
    let mut checked = 0;
    let mut failures = Vec::new();
    for (variant, kp) in lemma31_grid_cases() {
        for n in 1..=n_max {
            checked += 1;
            if !check_lemma31(variant, &kp, n).expect("grid parameters are valid") {
                failures.push((variant, kp.clone(), n));
            }
        }
    }
    (checked, failures)
}
