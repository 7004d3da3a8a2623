//! Integer-scaled evaluation for whole ranges of `n` at once.
//!
//! With `L = lcm(1..=N)` every summand `sgn(p)^k / k^|p|` becomes the integer
//! `sgn(p)^k (L/k)^|p|` after multiplying by `L^|p|`, so a nested sum of weight
//! `w` turns into an integer multiple of `L^-w`. Tables below hold those
//! integers for every `k <= N`; exact comparisons never leave `Integer`.

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::{BinomialCache, Companion};
use crate::index::{merge_all, SignedIndex};

pub struct ScaledContext {
    n_max: usize,
    lcm: Integer,
    binomials: BinomialCache,
    // powers[e][k] = (L/k)^e
    powers: Vec<Vec<Integer>>,
}

/// One `n` of a scaled comparison: the identity holds iff `lhs_scaled == rhs_scaled`,
/// and the true values are both divided by `scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledCell {
    pub n: u64,
    pub lhs_scaled: Integer,
    pub rhs_scaled: Integer,
    pub scale: Integer,
}

impl ScaledCell {
    pub fn equal(&self) -> bool {
        self.lhs_scaled == self.rhs_scaled
    }

    pub fn lhs(&self) -> Rational {
        Rational::from((self.lhs_scaled.clone(), self.scale.clone()))
    }

    pub fn rhs(&self) -> Rational {
        Rational::from((self.rhs_scaled.clone(), self.scale.clone()))
    }
}

const PRECOMPUTED_EXPONENTS: usize = 24;

impl ScaledContext {
    pub fn new(n_max: usize) -> Self {
        let mut lcm = Integer::from(1);
        for k in 2..=n_max as u32 {
            lcm.lcm_u_mut(k);
        }
        let quotients: Vec<Integer> = (0..=n_max)
            .map(|k| if k == 0 { Integer::new() } else { Integer::from(&lcm / k as u32) })
            .collect();
        let mut powers = vec![vec![Integer::from(1); n_max + 1]];
        for e in 1..=PRECOMPUTED_EXPONENTS {
            let row = powers[e - 1].iter().zip(&quotients).map(|(p, q)| Integer::from(p * q)).collect();
            powers.push(row);
        }
        ScaledContext { n_max, lcm, binomials: BinomialCache::new(2 * n_max), powers }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn lcm(&self) -> &Integer {
        &self.lcm
    }

    /// `L^|part| · sgn(part)^k / k^|part|`.
    pub fn term(&self, part: i64, k: usize) -> Integer {
        let e = part.unsigned_abs() as usize;
        let mut value = match self.powers.get(e) {
            Some(row) => row[k].clone(),
            None => {
                let q = Integer::from(&self.lcm / k as u32);
                q.pow(e as u32)
            }
        };
        if part < 0 && k % 2 == 1 {
            value = -value;
        }
        value
    }

    /// `L^weight(s) · H_k(s)` (or `H*_k`) for `k = 0..=n_max`.
    pub fn mhs_table(&self, s: &SignedIndex, star: bool) -> Vec<Integer> {
        let n = self.n_max;
        let mut current = vec![Integer::from(1); n + 1];
        for &part in s.parts().iter().rev() {
            let mut next = vec![Integer::new(); n + 1];
            for k in 1..=n {
                let inner = if star { &current[k] } else { &current[k - 1] };
                let step = self.term(part, k) * inner;
                next[k] = Integer::from(&next[k - 1] + &step);
            }
            current = next;
        }
        current
    }

    /// `F(k) = Σ_{p ∈ Π(base)} coeff^depth(p) · L^w · sgn(p_1)^k/k^|p_1| · H_{k-1}(p_2, …)`
    /// for `k = 0..=n_max`, without enumerating `Π(base)`.
    ///
    /// Sweeps the base right to left: `q[j][k]` is the weighted sum of `L^w H_k` over
    /// all comma/⊕ patterns of `base[j..]`.
    pub fn pi_head_terms(&self, base: &SignedIndex, coeff: i64) -> Vec<Integer> {
        let n = self.n_max;
        let parts = base.parts();
        let m = parts.len();
        assert!(m > 0, "empty base");
        let merged = |j: usize, i: usize| merge_all(&parts[j..i]);
        let mut q: Vec<Vec<Integer>> = vec![Vec::new(); m + 1];
        q[m] = vec![Integer::from(1); n + 1];
        for j in (1..m).rev() {
            let mut row = vec![Integer::new(); n + 1];
            for i in j + 1..=m {
                let g = merged(j, i);
                let mut running = Integer::new();
                for k in 1..=n {
                    running += self.term(g, k) * &q[i][k - 1];
                    row[k] += &running;
                }
            }
            for v in row.iter_mut() {
                *v *= coeff;
            }
            q[j] = row;
        }
        let mut head = vec![Integer::new(); n + 1];
        for i in 1..=m {
            let g = merged(0, i);
            for k in 1..=n {
                head[k] += self.term(g, k) * &q[i][k - 1];
            }
        }
        for v in head.iter_mut() {
            *v *= coeff;
        }
        head
    }

    /// `(D_n, w(n, k))` with `companion weight = w(n,k) / D_n`.
    fn weight(&self, companion: Companion, n: usize, k: usize) -> &Integer {
        match companion {
            Companion::Big => self.binomials.get(2 * n, n - k),
            Companion::Small => self.binomials.get(n, k),
        }
    }

    fn denominator(&self, companion: Companion, n: usize) -> Integer {
        match companion {
            Companion::Big => self.binomials.get(2 * n, n).clone(),
            Companion::Small => Integer::from(1),
        }
    }

    /// Compares `H*_n(lhs)` with `sign · Σ_{p ∈ Π(base)} coeff^depth(p) · companion_n(p)`
    /// for every `1 <= n <= n_max`.
    ///
    /// Panics if the two sides have different weight, since they could then
    /// never agree for all `n`.
    pub fn compare(
        &self,
        lhs: &SignedIndex,
        base: &SignedIndex,
        coeff: i64,
        sign: i64,
        companion: Companion,
    ) -> Vec<ScaledCell> {
        assert_eq!(lhs.weight(), base.weight(), "weight mismatch between {lhs} and {base}");
        let star = self.mhs_table(lhs, true);
        let head = self.pi_head_terms(base, coeff);
        let lw = self.lcm.clone().pow(lhs.weight() as u32);
        (1..=self.n_max)
            .map(|n| {
                let d = self.denominator(companion, n);
                let mut rhs = Integer::new();
                for k in 1..=n {
                    rhs += self.weight(companion, n, k) * &head[k];
                }
                if sign < 0 {
                    rhs = -rhs;
                }
                let lhs_scaled = Integer::from(&star[n] * &d);
                ScaledCell { n: n as u64, lhs_scaled, rhs_scaled: rhs, scale: d * &lw }
            })
            .collect()
    }
}
