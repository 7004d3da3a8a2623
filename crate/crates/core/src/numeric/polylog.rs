//! Multiple polylogarithms `G(w; y)` with letters in `{0, ±1, 2}` and the
//! Hölder convolution that expresses an alternating Euler sum through
//! evaluations at `y = 1/2` only.

use rug::ops::Pow;
use rug::{Float, Integer};

/// A letter of a polylogarithm word.
pub type Letter = i8;

/// The word of `ζ(s)`: each part `±m` contributes `0^{m-1}` followed by the
/// running product of the signs seen so far.
pub fn zeta_word(parts: &[i64]) -> Vec<Letter> {
    let mut word = Vec::new();
    let mut sign: Letter = 1;
    for &p in parts {
        sign *= p.signum() as Letter;
        word.extend(std::iter::repeat(0).take(p.unsigned_abs() as usize - 1));
        word.push(sign);
    }
    word
}

/// Number of terms `N` for which the tail of a depth-`k` sum with ratios
/// bounded by `1/2` is at most `2^-bits`, together with that tail as `f64`.
///
/// The tail is `1 - Σ_{n<=N} C(n-1,k-1) 2^{-n}`, computed exactly.
pub fn truncation_point(k: usize, bits: u32) -> (usize, f64) {
    if k == 0 {
        return (0, 0.0);
    }
    // a = Σ_{n<=N} C(n-1,k-1) 2^{N-n}; tail = (2^N - a) / 2^N
    let mut a = Integer::new();
    let mut n = 0usize;
    loop {
        n += 1;
        a <<= 1;
        if n >= k {
            a += Integer::from(n - 1).binomial((k - 1) as u32);
        }
        let gap = Integer::from(Integer::u_pow_u(2, n as u32)) - &a;
        // gap / 2^n <= 2^-bits  <=>  gap << bits <= 2^n
        if n >= k && Integer::from(&gap << bits) <= Integer::from(Integer::u_pow_u(2, n as u32)) {
            let tail = Float::with_val(64, &gap) >> n as u32;
            return (n, tail.to_f64());
        }
    }
}

/// `G(w; 1/2)` for a word whose last letter is nonzero and whose nonzero
/// letters lie in `{-1, 1, 2}`, truncated after `N` outer terms.
///
/// Splitting `w` into blocks `0^{m_i-1} b_i`,
/// `G = (-1)^k Σ_{n_1>…>n_k>=1} Π P_i^{n_i-n_{i+1}} / n_i^{m_i}` with
/// `P_i = 1/(2 b_i)`, so `|G| <= 1`.
fn g_half(word: &[Letter], terms: usize, prec: u32) -> Float {
    if word.is_empty() {
        return Float::with_val(prec, 1);
    }
    let mut blocks: Vec<(u32, Letter)> = Vec::new();
    let mut zeros = 0u32;
    for &l in word {
        if l == 0 {
            zeros += 1;
        } else {
            blocks.push((zeros + 1, l));
            zeros = 0;
        }
    }
    assert_eq!(zeros, 0, "trailing zero letter");
    let k = blocks.len();
    let ratio = |b: Letter| Float::with_val(prec, 1) / (2 * b as i32);
    let denominators: Vec<Float> = (0..=terms)
        .map(|n| Float::with_val(prec, n.max(1)))
        .collect();
    let divide = |mut x: Float, n: usize, m: u32| {
        if m <= 2 || n < 1 << 16 {
            x /= Integer::from(n).pow(m);
        } else {
            for _ in 0..m {
                x /= &denominators[n];
            }
        }
        x
    };

    // u[n] holds U_i(n) for the current block i
    let (m_last, b_last) = blocks[k - 1];
    let p = ratio(b_last);
    let mut u = vec![Float::with_val(prec, 0); terms + 1];
    let mut power = Float::with_val(prec, 1);
    for n in 1..=terms {
        power *= &p;
        u[n] = divide(power.clone(), n, m_last);
    }
    for &(m, b) in blocks[..k - 1].iter().rev() {
        let p = ratio(b);
        let mut next = vec![Float::with_val(prec, 0); terms + 1];
        let mut r = Float::with_val(prec, 0);
        for n in 1..=terms {
            // R(n) = P (R(n-1) + U_{i+1}(n-1))
            r += &u[n - 1];
            r *= &p;
            next[n] = divide(r.clone(), n, m);
        }
        u = next;
    }
    let mut total = Float::with_val(prec, 0);
    for value in &u[1..] {
        total += value;
    }
    if k % 2 == 1 {
        -total
    } else {
        total
    }
}

/// A value with an upper bound on its truncation error.
pub(crate) struct Bounded {
    pub value: Float,
    pub bound: f64,
    /// Accumulated rounding error bound: every partial value has modulus at
    /// most 1, so each of the `ops` operations costs at most `2^{1-prec}`.
    pub rounding: f64,
}

fn g_half_bounded(word: &[Letter], bits: u32, prec: u32) -> Bounded {
    let depth = word.iter().filter(|&&l| l != 0).count();
    let (terms, tail) = truncation_point(depth, bits);
    let ops = (terms * (word.len() + 2)) as f64;
    Bounded { value: g_half(word, terms, prec), bound: tail, rounding: ops * 2f64.powi(1 - prec as i32) }
}

/// `G(w; 1) = Σ_j (-1)^j G(1-a_j,…,1-a_1; 1/2) G(a_{j+1},…,a_W; 1/2)` for a
/// convergent word (`a_1 != 1`, last letter nonzero). Each factor is
/// truncated at `2^-bits`.
pub(crate) fn g_one(word: &[Letter], bits: u32, prec: u32) -> Bounded {
    let mut total = Float::with_val(prec, 0);
    let mut bound = 0.0;
    let mut rounding = 0.0;
    for j in 0..=word.len() {
        let left: Vec<Letter> = word[..j].iter().rev().map(|&a| 1 - a).collect();
        let right = &word[j..];
        // the reversed prefix ends in 1 - a_1, nonzero for admissible words
        let g1 = g_half_bounded(&left, bits, prec);
        let g2 = g_half_bounded(right, bits, prec);
        let product = Float::with_val(prec, &g1.value * &g2.value);
        if j % 2 == 1 {
            total -= product;
        } else {
            total += product;
        }
        bound += g1.bound + g2.bound + g1.bound * g2.bound;
        rounding += g1.rounding + g2.rounding + 2f64.powi(2 - prec as i32);
    }
    Bounded { value: total, bound, rounding }
}
