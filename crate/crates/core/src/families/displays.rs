//! Closed-form special cases of the families, transcribed term by term.
//!
//! These are written out by hand rather than produced by the builders, so
//! comparing them with [`super::build_rhs`] checks the builders themselves.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::exact::mhs;
use crate::index::{FormalSum, SignedIndex};

fn index(parts: &[i64]) -> SignedIndex {
    SignedIndex::new(parts.to_vec()).expect("display parts are nonzero")
}

fn twos_then(out: &mut Vec<i64>, count: u32, part: Option<i64>) {
    out.extend(std::iter::repeat(2).take(count as usize));
    out.extend(part);
}

/// `Σ_{k=1}^n (±1)^k H_{k-1}(inner) C(n,k) / (k^exp C(n+k,k))`.
fn big(n: u64, alternating: bool, exp: u32, inner: &[i64]) -> Rational {
    binomial_sum(n, alternating, exp, inner, true)
}

/// `Σ_{k=1}^n (±1)^k H_{k-1}(inner) C(n,k) / k^exp`.
fn small(n: u64, alternating: bool, exp: u32, inner: &[i64]) -> Rational {
    binomial_sum(n, alternating, exp, inner, false)
}

fn binomial_sum(n: u64, alternating: bool, exp: u32, inner: &[i64], mollify: bool) -> Rational {
    let inner = index(inner);
    let mut total = Rational::new();
    for k in 1..=n {
        let h = mhs(k - 1, &inner);
        if h == 0 {
            continue;
        }
        let mut den = Integer::from(k).pow(exp);
        if mollify {
            den *= Integer::from(n + k).binomial(k as u32);
        }
        let mut num = Integer::from(n).binomial(k as u32);
        if alternating && k % 2 == 1 {
            num = -num;
        }
        total += Rational::from((num, den)) * h;
    }
    total
}

fn i(x: u32) -> i64 {
    x as i64
}

/// `H*_n({2}^a, 1)`.
pub fn ref_a(n: u64, a: u32) -> Rational {
    big(n, false, 2 * a + 1, &[]) * 2u32
}

/// `H*_n({2}^a, 1, {2}^b)`, `b >= 1`.
pub fn ref_b(n: u64, a: u32, b: u32) -> Rational {
    -big(n, true, 2 * a + 1 + 2 * b, &[]) * 2u32 - big(n, false, 2 * a + 1, &[-2 * i(b)]) * 4u32
}

/// `H*_n({2}^a,1,{2}^b,1)`.
pub fn two_one_r2(n: u64, a: u32, b: u32) -> Rational {
    big(n, false, 2 * (a + b) + 2, &[]) * 2u32 + big(n, false, 2 * a + 1, &[2 * i(b) + 1]) * 4u32
}

/// `H*_n({2}^a,1,{2}^b,1,{2}^c,1)`.
pub fn two_one_r3(n: u64, a: u32, b: u32, c: u32) -> Rational {
    big(n, false, 2 * (a + b + c) + 3, &[]) * 2u32
        + big(n, false, 2 * a + 2 * b + 2, &[2 * i(c) + 1]) * 4u32
        + big(n, false, 2 * a + 1, &[2 * i(b) + 2 * i(c) + 2]) * 4u32
        + big(n, false, 2 * a + 1, &[2 * i(b) + 1, 2 * i(c) + 1]) * 8u32
}

/// `H*_n({2}^a,1,{2}^b,1,{2}^c)`, `c >= 1`.
pub fn two_one_two_r2(n: u64, a: u32, b: u32, c: u32) -> Rational {
    -big(n, true, 2 * (a + b + c) + 2, &[]) * 2u32
        - big(n, false, 2 * a + 2 * b + 2, &[-2 * i(c)]) * 4u32
        - big(n, false, 2 * a + 1, &[-(2 * i(b) + 1 + 2 * i(c))]) * 4u32
        - big(n, false, 2 * a + 1, &[2 * i(b) + 1, -2 * i(c)]) * 8u32
}

/// `H*_n({2}^b,3,{2}^a,1)`.
pub fn c21_r1(n: u64, a: u32, b: u32) -> Rational {
    big(n, false, 2 * (b + a) + 4, &[]) * 2u32 + big(n, true, 2 * b + 2, &[-(2 * i(a) + 2)]) * 4u32
}

/// `H*_n({2}^a1,1,{2}^b,3,{2}^a2,1)`. The leading exponent is `2(a1+b+a2)+5`,
/// the only value compatible with the weight of the left-hand side.
pub fn one_c21_r1(n: u64, a1: u32, b: u32, a2: u32) -> Rational {
    big(n, false, 2 * (a1 + b + a2) + 5, &[]) * 2u32
        + big(n, false, 2 * a1 + 1, &[2 * i(b) + 2 * i(a2) + 4]) * 4u32
        + big(n, true, 2 * a1 + 2 * b + 3, &[-(2 * i(a2) + 2)]) * 4u32
        + big(n, false, 2 * a1 + 1, &[-(2 * i(b) + 2), -(2 * i(a2) + 2)]) * 8u32
}

/// `H*_n({2}^a,1,{2}^b,3)`.
pub fn two_one_c2_r1(n: u64, a: u32, b: u32) -> Rational {
    -big(n, true, 2 * (a + b) + 4, &[]) * 2u32
        - big(n, false, 2 * a + 1, &[-(2 * i(b) + 3)]) * 4u32
        - big(n, true, 2 * a + 2 * b + 3, &[1]) * 4u32
        - big(n, false, 2 * a + 1, &[-(2 * i(b) + 2), 1]) * 8u32
}

/// `H*_n({2}^b1,3,{2}^a,1,{2}^b2,3)`.
pub fn c2_two_one_c2_r1(n: u64, b1: u32, a: u32, b2: u32) -> Rational {
    let (a, b1, b2) = (i(a), i(b1), i(b2));
    let e = |x: i64| x as u32;
    -big(n, true, e(2 * (b1 + a + b2) + 7), &[]) * 2u32
        - big(n, false, e(2 * b1 + 2 * a + 4), &[-(2 * b2 + 3)]) * 4u32
        - big(n, true, e(2 * b1 + 2), &[2 * a + 2 * b2 + 5]) * 4u32
        - big(n, true, e(2 * b1 + 2), &[-(2 * a + 2), -(2 * b2 + 3)]) * 8u32
        - big(n, true, e(2 * b1 + 2 * a + 2 * b2 + 6), &[1]) * 4u32
        - big(n, true, e(2 * b1 + 2), &[2 * a + 2 * b2 + 4, 1]) * 8u32
        - big(n, false, e(2 * b1 + 2 * a + 4), &[-(2 * b2 + 2), 1]) * 8u32
        - big(n, true, e(2 * b1 + 2), &[-(2 * a + 2), -(2 * b2 + 2), 1]) * 16u32
}

/// Triples `(i, j, x)` with `i, j >= 1`, `x` a (possibly empty) positive
/// composition and `i + j + |x| = c`.
fn splits(c: u32) -> Vec<(u32, u32, Vec<i64>)> {
    let mut out = Vec::new();
    for i in 1..c {
        for j in 1..=c - i {
            let rest = c - i - j;
            if rest == 0 {
                out.push((i, j, Vec::new()));
            }
            for x in super::lemma31::compositions(rest) {
                out.push((i, j, x.into_iter().map(i64::from).collect()));
            }
        }
    }
    out
}

/// `H*_n({1}^a1,c1,{1}^a2,c2,{1}^t)`.
pub fn ones_c_r2(n: u64, a1: u32, c1: u32, a2: u32, c2: u32, t: u32) -> Rational {
    let mut total = -small(n, true, a1 + c1 + a2 + c2 + t, &[]);
    for (i2, j2, x2) in splits(c2) {
        let mut inner = x2.clone();
        inner.push(i(i2 + t));
        total -= small(n, true, a1 + c1 + a2 + j2, &inner);
    }
    for (i1, j1, x1) in splits(c1) {
        let mut inner = x1.clone();
        inner.push(i(i1 + a2 + c2 + t));
        total -= small(n, true, a1 + j1, &inner);
    }
    for (i1, j1, x1) in splits(c1) {
        for (i2, j2, x2) in splits(c2) {
            let mut inner = x1.clone();
            inner.push(i(i1 + a2 + j2));
            inner.extend(&x2);
            inner.push(i(i2 + t));
            total -= small(n, true, a1 + j1, &inner);
        }
    }
    total
}

/// A zeta-value identity `ζ*(lhs) = Σ coeff · ζ(p)` written out term by term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaDisplay {
    pub name: String,
    pub lhs: SignedIndex,
    pub rhs: FormalSum,
}

fn zeta_display(name: String, lhs: Vec<i64>, terms: &[(i64, &[i64])]) -> ZetaDisplay {
    let rhs = terms.iter().map(|&(c, p)| (index(p), c)).collect();
    ZetaDisplay { name, lhs: index(&lhs), rhs }
}

/// `ζ*({2}^a1,1,{2}^a2,1) = 4ζ(2a1+1,2a2+1) + 2ζ(2a1+2a2+2)`.
pub fn zeta_two_one_r2(a1: u32, a2: u32) -> ZetaDisplay {
    let (a1, a2) = (i(a1), i(a2));
    let mut lhs = Vec::new();
    twos_then(&mut lhs, a1 as u32, Some(1));
    twos_then(&mut lhs, a2 as u32, Some(1));
    zeta_display(
        format!("two-one r=2 a=({a1},{a2})"),
        lhs,
        &[(4, &[2 * a1 + 1, 2 * a2 + 1]), (2, &[2 * a1 + 2 * a2 + 2])],
    )
}

/// `ζ*({2}^a,1,{2}^b,1,{2}^c)` with `ac != 0`.
pub fn zeta_two_one_two_r2(a: u32, b: u32, c: u32) -> ZetaDisplay {
    let (a, b, c) = (i(a), i(b), i(c));
    let mut lhs = Vec::new();
    twos_then(&mut lhs, a as u32, Some(1));
    twos_then(&mut lhs, b as u32, Some(1));
    twos_then(&mut lhs, c as u32, None);
    zeta_display(
        format!("two-one-two r=2 a={a} b={b} c={c}"),
        lhs,
        &[
            (-2, &[-(2 * (a + b + c) + 2)]),
            (-4, &[2 * a + 2 + 2 * b, -2 * c]),
            (-4, &[2 * a + 1, -(2 * b + 1 + 2 * c)]),
            (-8, &[2 * a + 1, 2 * b + 1, -2 * c]),
        ],
    )
}

/// `ζ*({2}^b,3,{2}^a,1) = 2ζ(2a+2b+4) + 4ζ(2b+2‾,2a+2‾)`.
pub fn zeta_c21_r1(a: u32, b: u32) -> ZetaDisplay {
    let (a, b) = (i(a), i(b));
    let mut lhs = Vec::new();
    twos_then(&mut lhs, b as u32, Some(3));
    twos_then(&mut lhs, a as u32, Some(1));
    zeta_display(
        format!("c21 r=1 a={a} b={b}"),
        lhs,
        &[(2, &[2 * a + 2 * b + 4]), (4, &[-(2 * b + 2), -(2 * a + 2)])],
    )
}

/// `ζ*({2}^a1,1,{2}^b,3,{2}^a2,1)`.
pub fn zeta_one_c21_r1(a1: u32, b: u32, a2: u32) -> ZetaDisplay {
    let (a1, b, a2) = (i(a1), i(b), i(a2));
    let mut lhs = Vec::new();
    twos_then(&mut lhs, a1 as u32, Some(1));
    twos_then(&mut lhs, b as u32, Some(3));
    twos_then(&mut lhs, a2 as u32, Some(1));
    zeta_display(
        format!("one-c21 r=1 a1={a1} b={b} a2={a2}"),
        lhs,
        &[
            (2, &[2 * (a1 + b + a2) + 5]),
            (4, &[2 * a1 + 1, 2 * b + 2 * a2 + 4]),
            (4, &[-(2 * a1 + 2 * b + 3), -(2 * a2 + 2)]),
            (8, &[2 * a1 + 1, -(2 * b + 2), -(2 * a2 + 2)]),
        ],
    )
}

/// `ζ*({2}^b,3,{2}^a,1,{2}^t)`.
pub fn zeta_c212_r1(a: u32, b: u32, t: u32) -> ZetaDisplay {
    let (a, b, t) = (i(a), i(b), i(t));
    let mut lhs = Vec::new();
    twos_then(&mut lhs, b as u32, Some(3));
    twos_then(&mut lhs, a as u32, Some(1));
    twos_then(&mut lhs, t as u32, None);
    zeta_display(
        format!("c212 r=1 a={a} b={b} t={t}"),
        lhs,
        &[
            (-2, &[-(2 * b + 2 * a + 2 * t + 4)]),
            (-4, &[2 * b + 2 * a + 4, -2 * t]),
            (-4, &[-(2 * b + 2), 2 * a + 2 * t + 2]),
            (-8, &[-(2 * b + 2), -(2 * a + 2), -2 * t]),
        ],
    )
}

/// `ζ*({2}^a1,1,{2}^b,3,{2}^a2,1,{2}^t)`.
pub fn zeta_one_c212_r1(a1: u32, b: u32, a2: u32, t: u32) -> ZetaDisplay {
    let (a1, b, a2, t) = (i(a1), i(b), i(a2), i(t));
    let mut lhs = Vec::new();
    twos_then(&mut lhs, a1 as u32, Some(1));
    twos_then(&mut lhs, b as u32, Some(3));
    twos_then(&mut lhs, a2 as u32, Some(1));
    twos_then(&mut lhs, t as u32, None);
    zeta_display(
        format!("one-c212 r=1 a1={a1} b={b} a2={a2} t={t}"),
        lhs,
        &[
            (-2, &[-(2 * a1 + 2 * b + 2 * a2 + 2 * t + 5)]),
            (-4, &[2 * a1 + 2 * b + 2 * a2 + 5, -2 * t]),
            (-4, &[-(2 * a1 + 2 * b + 3), 2 * a2 + 2 * t + 2]),
            (-8, &[-(2 * a1 + 2 * b + 3), -(2 * a2 + 2), -2 * t]),
            (-4, &[2 * a1 + 1, -(2 * b + 2 * a2 + 2 * t + 4)]),
            (-8, &[2 * a1 + 1, 2 * b + 2 * a2 + 4, -2 * t]),
            (-8, &[2 * a1 + 1, -(2 * b + 2), 2 * a2 + 2 * t + 2]),
            (-16, &[2 * a1 + 1, -(2 * b + 2), -(2 * a2 + 2), -2 * t]),
        ],
    )
}

/// `ζ*({2}^a,1,{2}^b,3)`.
pub fn zeta_two_one_c2_r1(a: u32, b: u32) -> ZetaDisplay {
    let (a, b) = (i(a), i(b));
    let mut lhs = Vec::new();
    twos_then(&mut lhs, a as u32, Some(1));
    twos_then(&mut lhs, b as u32, Some(3));
    zeta_display(
        format!("two-one-c2 r=1 a={a} b={b}"),
        lhs,
        &[
            (-2, &[-(2 * a + 2 * b + 4)]),
            (-4, &[1 + 2 * a, -(2 * b + 3)]),
            (-4, &[-(2 * a + 2 * b + 3), 1]),
            (-8, &[2 * a + 1, -(2 * b + 2), 1]),
        ],
    )
}

/// `ζ*({2}^b1,3,{2}^a,1,{2}^b2,3)`.
pub fn zeta_c2_two_one_c2_r1(b1: u32, a: u32, b2: u32) -> ZetaDisplay {
    let (b1, a, b2) = (i(b1), i(a), i(b2));
    let mut lhs = Vec::new();
    twos_then(&mut lhs, b1 as u32, Some(3));
    twos_then(&mut lhs, a as u32, Some(1));
    twos_then(&mut lhs, b2 as u32, Some(3));
    zeta_display(
        format!("c2-two-one-c2 r=1 b1={b1} a={a} b2={b2}"),
        lhs,
        &[
            (-2, &[-(2 * (b1 + a + b2) + 7)]),
            (-4, &[2 * b1 + 2 * a + 4, -(2 * b2 + 3)]),
            (-4, &[-(2 * b1 + 2), 2 * a + 2 * b2 + 5]),
            (-4, &[-(2 * b1 + 2 * a + 2 * b2 + 6), 1]),
            (-8, &[-(2 * b1 + 2), -(2 * a + 2), -(2 * b2 + 3)]),
            (-8, &[-(2 * b1 + 2), 2 * a + 2 * b2 + 4, 1]),
            (-8, &[2 * b1 + 2 * a + 4, -(2 * b2 + 2), 1]),
            (-16, &[-(2 * b1 + 2), -(2 * a + 2), -(2 * b2 + 2), 1]),
        ],
    )
}
