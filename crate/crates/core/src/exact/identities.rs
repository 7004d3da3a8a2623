//! Two auxiliary finite identities used by the inductive arguments behind
//! the family formulas.

use rug::ops::Pow;
use rug::{Integer, Rational};

fn binomial(n: u64, k: u64) -> Integer {
    Integer::from(n).binomial(k as u32)
}

/// The three members of
/// `2 Σ_{k=l+1}^n k C(n,k)/C(n+k,k) = n C(n-1,l)/C(n+l,l) = (n-l) C(n,l)/C(n+l,l)`.
pub fn binomial_identity_sides(n: u64, l: u64) -> [Rational; 3] {
    assert!(l < n, "need 0 <= l < n");
    let mut sum = Rational::new();
    for k in l + 1..=n {
        sum += Rational::from((binomial(n, k) * k, binomial(n + k, k)));
    }
    let middle = Rational::from((binomial(n - 1, l) * n, binomial(n + l, l)));
    let right = Rational::from((binomial(n, l) * (n - l), binomial(n + l, l)));
    [sum * 2u32, middle, right]
}

pub fn check_binomial_identity(n: u64, l: u64) -> bool {
    let [a, b, c] = binomial_identity_sides(n, l);
    a == b && b == c
}

/// Both sides of
/// `Σ_{l=0}^{a} (n/k)^{2l} = (n^{2a+2} - k^{2a+2}) / (k^{2a} (n-k)(n+k))` for `1 <= k < n`.
pub fn geometric_identity_sides(n: u64, k: u64, a: u32) -> [Rational; 2] {
    assert!(1 <= k && k < n, "need 1 <= k < n");
    let ratio = Rational::from((n * n, k * k));
    let mut power = Rational::from(1);
    let mut sum = Rational::new();
    for _ in 0..=a {
        sum += &power;
        power *= &ratio;
    }
    let num = Integer::from(n).pow(2 * a + 2) - Integer::from(k).pow(2 * a + 2);
    let den = Integer::from(k).pow(2 * a) * (n - k) * (n + k);
    [sum, Rational::from((num, den))]
}

pub fn check_geometric_identity(n: u64, k: u64, a: u32) -> bool {
    let [lhs, rhs] = geometric_identity_sides(n, k, a);
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_identity_small() {
        assert_eq!(binomial_identity_sides(1, 0), [1, 1, 1].map(Rational::from));
        // n=2, l=0: 2(1·2/3 + 2·1/6) = 2
        assert_eq!(binomial_identity_sides(2, 0)[0], 2);
        for n in 1..=25 {
            for l in 0..n {
                assert!(check_binomial_identity(n, l), "n={n} l={l}");
            }
        }
    }

    #[test]
    fn geometric_identity_small() {
        for n in 2..=15u64 {
            for k in 1..n {
                for a in 0..=4 {
                    assert!(check_geometric_identity(n, k, a), "n={n} k={k} a={a}");
                }
            }
        }
        // a = 1, n = 2, k = 1: 1 + 4 = (16 - 1)/3
        assert_eq!(geometric_identity_sides(2, 1, 1)[0], 5);
    }
}
