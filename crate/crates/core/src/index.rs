//! Signed compositions and the index combinatorics built on them.
//!
//! A [`SignedIndex`] is an ordered list of nonzero integers. A negative part
//! `-m` stands for the alternating ("barred") argument: its summand carries
//! the sign `(-1)^k`. The same encoding is used in storage, text and reports.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("index parts must be nonzero")]
    ZeroPart,
    #[error("operation requires a nonempty index")]
    EmptyIndex,
    #[error("cannot parse index token {token:?}: {reason}")]
    Parse { token: String, reason: String },
}

/// An ordered composition of nonzero integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SignedIndex(Vec<i64>);

impl SignedIndex {
    pub fn new(parts: Vec<i64>) -> Result<Self, IndexError> {
        if parts.iter().any(|&p| p == 0) {
            return Err(IndexError::ZeroPart);
        }
        Ok(SignedIndex(parts))
    }

    pub fn empty() -> Self {
        SignedIndex(Vec::new())
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<i64> {
        self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|p| p.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The infinite nested sum converges iff the leading part is not `+1`.
    pub fn is_admissible(&self) -> bool {
        self.0.first() != Some(&1)
    }

    pub fn tail(&self) -> SignedIndex {
        SignedIndex(self.0.get(1..).unwrap_or(&[]).to_vec())
    }

    pub fn concat(&self, other: &SignedIndex) -> SignedIndex {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        SignedIndex(parts)
    }

    /// Builds an index from parts already known to be nonzero.
    pub(crate) fn from_nonzero(parts: Vec<i64>) -> Self {
        debug_assert!(parts.iter().all(|&p| p != 0));
        SignedIndex(parts)
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for SignedIndex {
    type Err = IndexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_index(s)
    }
}

/// Parses `"s1,s2,...,sk"`; whitespace around tokens is ignored.
impl TryFrom<String> for SignedIndex {
    type Error = IndexError;

    /// Accepts the empty string as the empty index, unlike [`parse_index`].
    fn try_from(text: String) -> Result<Self, Self::Error> {
        if text.trim().is_empty() {
            Ok(SignedIndex::empty())
        } else {
            parse_index(&text)
        }
    }
}

impl From<SignedIndex> for String {
    fn from(index: SignedIndex) -> String {
        format_index(&index)
    }
}

pub fn parse_index(text: &str) -> Result<SignedIndex, IndexError> {
    let mut parts = Vec::new();
    for raw in text.split(',') {
        let token = raw.trim();
        if token.is_empty() {
            return Err(IndexError::Parse {
                token: raw.to_string(),
                reason: "empty token".into(),
            });
        }
        let value: i64 = token.parse().map_err(|_| IndexError::Parse {
            token: token.to_string(),
            reason: "not an integer".into(),
        })?;
        if value == 0 {
            return Err(IndexError::Parse {
                token: token.to_string(),
                reason: "parts must be nonzero".into(),
            });
        }
        parts.push(value);
    }
    Ok(SignedIndex(parts))
}

pub fn format_index(index: &SignedIndex) -> String {
    index.to_string()
}

/// Sign-aware merge: magnitudes add, signs multiply.
pub fn oplus(a: i64, b: i64) -> Result<i64, IndexError> {
    if a == 0 || b == 0 {
        return Err(IndexError::ZeroPart);
    }
    Ok(merge(a, b))
}

#[inline]
pub(crate) fn merge(a: i64, b: i64) -> i64 {
    a.signum() * b + b.signum() * a
}

/// Merges every part of `parts` with `⊕`.
pub fn merge_all(parts: &[i64]) -> i64 {
    parts.iter().copied().reduce(merge).expect("nonempty slice")
}

/// Applies a separator mask to `base`: bit `i` set means slot `i`
/// (between parts `i` and `i+1`) is an `⊕`, clear means a comma.
pub fn apply_mask(base: &SignedIndex, mask: u64) -> SignedIndex {
    let parts = base.parts();
    let mut out = Vec::with_capacity(parts.len());
    let mut acc = parts[0];
    for (slot, &p) in parts[1..].iter().enumerate() {
        if mask >> slot & 1 == 1 {
            acc = merge(acc, p);
        } else {
            out.push(acc);
            acc = p;
        }
    }
    out.push(acc);
    SignedIndex(out)
}

fn mask_count(base: &SignedIndex) -> Result<u64, IndexError> {
    if base.is_empty() {
        return Err(IndexError::EmptyIndex);
    }
    assert!(base.depth() <= 63, "depth {} too large to expand", base.depth());
    Ok(1u64 << (base.depth() - 1))
}

/// All `2^(m-1)` comma/`⊕` variants of `base`, in ascending mask order.
pub fn pi_expand(base: &SignedIndex) -> Result<Vec<SignedIndex>, IndexError> {
    let count = mask_count(base)?;
    Ok((0..count).map(|mask| apply_mask(base, mask)).collect())
}

/// The Π-expansion as a formal sum, each element weighted by
/// `global_sign * coeff_base^depth`. Colliding indices accumulate.
pub fn pi_expand_weighted(
    base: &SignedIndex,
    coeff_base: i64,
    global_sign: i64,
) -> Result<FormalSum, IndexError> {
    let mut sum = FormalSum::new();
    for p in pi_expand(base)? {
        let c = global_sign * coeff_base.pow(p.depth() as u32);
        sum.add_term(p, c);
    }
    Ok(sum)
}

/// Rewrites a star sum (`>=` chains) as a sum of strict sums: every run of
/// equal summation variables becomes one `⊕`-merged part.
pub fn star_expand(s: &SignedIndex) -> Result<FormalSum, IndexError> {
    pi_expand_weighted(s, 1, 1)
}

/// True iff every part `a` satisfies `a > 0 <=> 4 | a`.
pub fn sign_rule_holds(p: &SignedIndex) -> bool {
    p.parts().iter().all(|&a| (a > 0) == (a % 4 == 0))
}

/// A finite integer combination of signed indices.
///
/// Terms keep first-insertion order for display; equality ignores order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: IndexMap<SignedIndex, i64>,
}

impl FormalSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(index: SignedIndex, coeff: i64) -> Self {
        let mut s = Self::new();
        s.add_term(index, coeff);
        s
    }

    /// The unit `1 · ∅`.
    pub fn unit() -> Self {
        Self::single(SignedIndex::empty(), 1)
    }

    pub fn add_term(&mut self, index: SignedIndex, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.get_mut(&index) {
            Some(entry) => {
                *entry = entry.checked_add(coeff).expect("formal sum coefficient overflow");
                if *entry == 0 {
                    self.terms.shift_remove(&index);
                }
            }
            None => {
                self.terms.insert(index, coeff);
            }
        }
    }

    pub fn add_sum(&mut self, other: &FormalSum) {
        for (idx, c) in other.iter() {
            self.add_term(idx.clone(), c);
        }
    }

    pub fn scaled(&self, factor: i64) -> FormalSum {
        let mut out = FormalSum::new();
        for (idx, c) in self.iter() {
            out.add_term(idx.clone(), c.checked_mul(factor).expect("coefficient overflow"));
        }
        out
    }

    pub fn coeff(&self, index: &SignedIndex) -> i64 {
        self.terms.get(index).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SignedIndex, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self - other`, zero-pruned.
    pub fn difference(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        out.add_sum(&other.scaled(-1));
        out
    }

    /// Renders as `c1*L(i1) + c2*L(i2) ...` where `L` is `label`
    /// (e.g. `"ζ"`, or `""` for bare parentheses).
    pub fn display_with(&self, label: &str) -> String {
        if self.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (idx, c)) in self.iter().enumerate() {
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else if c < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&format!("{}*{label}({idx})", c.unsigned_abs()));
        }
        out
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(""))
    }
}

impl FromIterator<(SignedIndex, i64)> for FormalSum {
    fn from_iter<T: IntoIterator<Item = (SignedIndex, i64)>>(iter: T) -> Self {
        let mut s = FormalSum::new();
        for (idx, c) in iter {
            s.add_term(idx, c);
        }
        s
    }
}

#[cfg(test)]
pub(crate) fn idx(parts: &[i64]) -> SignedIndex {
    SignedIndex::new(parts.to_vec()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn oplus_examples() {
        assert_eq!(oplus(2, 3).unwrap(), 5);
        assert_eq!(oplus(-2, 3).unwrap(), -5);
        assert_eq!(oplus(-2, -2).unwrap(), 4);
        assert_eq!(oplus(0, 3), Err(IndexError::ZeroPart));
    }

    #[test]
    fn pi_expand_examples() {
        assert_eq!(pi_expand(&idx(&[3, 3])).unwrap(), vec![idx(&[3, 3]), idx(&[6])]);
        // each single merge of two bars gives 4; the double merge gives -6
        assert_eq!(
            pi_expand(&idx(&[-2, -2, -2])).unwrap(),
            vec![idx(&[-2, -2, -2]), idx(&[4, -2]), idx(&[-2, 4]), idx(&[-6])]
        );
        assert_eq!(pi_expand(&idx(&[5])).unwrap(), vec![idx(&[5])]);
        assert_eq!(pi_expand(&SignedIndex::empty()), Err(IndexError::EmptyIndex));
    }

    #[test]
    fn pi_expand_weighted_examples() {
        let s = pi_expand_weighted(&idx(&[3, 3]), 2, 1).unwrap();
        assert_eq!(s, FormalSum::from_iter([(idx(&[3, 3]), 4), (idx(&[6]), 2)]));
        assert_eq!(s.to_string(), "4*(3,3) + 2*(6)");
        let s = pi_expand_weighted(&idx(&[-2]), 2, -1).unwrap();
        assert_eq!(s, FormalSum::single(idx(&[-2]), -2));
        let s = pi_expand_weighted(&idx(&[-2, -2]), 1, -1).unwrap();
        assert_eq!(s, FormalSum::from_iter([(idx(&[-2, -2]), -1), (idx(&[4]), -1)]));
        assert_eq!(s.to_string(), "-1*(-2,-2) - 1*(4)");
    }

    #[test]
    fn star_expand_examples() {
        assert_eq!(
            star_expand(&idx(&[2, 1])).unwrap(),
            FormalSum::from_iter([(idx(&[2, 1]), 1), (idx(&[3]), 1)])
        );
        assert_eq!(star_expand(&idx(&[2])).unwrap(), FormalSum::single(idx(&[2]), 1));
        assert_eq!(
            star_expand(&idx(&[-2, -2])).unwrap(),
            FormalSum::from_iter([(idx(&[-2, -2]), 1), (idx(&[4]), 1)])
        );
        assert!(star_expand(&SignedIndex::empty()).is_err());
    }

    #[test]
    fn sign_rule_examples() {
        assert!(sign_rule_holds(&idx(&[4, -2])));
        assert!(!sign_rule_holds(&idx(&[2])));
        for p in pi_expand(&idx(&[-2, -2, -2, -2])).unwrap() {
            assert!(sign_rule_holds(&p), "{p}");
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_index("2,1,-4").unwrap(), idx(&[2, 1, -4]));
        assert_eq!(parse_index(" 2 , -1 ").unwrap(), idx(&[2, -1]));
        assert!(matches!(parse_index(""), Err(IndexError::Parse { .. })));
        match parse_index("0,1") {
            Err(IndexError::Parse { token, .. }) => assert_eq!(token, "0"),
            other => panic!("unexpected {other:?}"),
        }
        match parse_index("2,x") {
            Err(IndexError::Parse { token, .. }) => assert_eq!(token, "x"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_index("2,,1").is_err());
        assert_eq!(format_index(&idx(&[-2, 3])), "-2,3");
    }

    #[test]
    fn formal_sum_prunes_zero() {
        let mut s = FormalSum::from_iter([(idx(&[2]), 3), (idx(&[3]), 1)]);
        s.add_term(idx(&[2]), -3);
        assert_eq!(s.len(), 1);
        assert_eq!(s.coeff(&idx(&[2])), 0);
        assert_eq!(s.to_string(), "1*(3)");
    }

    fn nonzero() -> impl Strategy<Value = i64> {
        prop_oneof![-9i64..=-1, 1i64..=9]
    }

    fn index_strategy(max_depth: usize) -> impl Strategy<Value = SignedIndex> {
        prop::collection::vec(nonzero(), 1..=max_depth).prop_map(SignedIndex)
    }

    fn formal_sum_strategy() -> impl Strategy<Value = FormalSum> {
        prop::collection::vec((index_strategy(3), -5i64..=5), 0..6)
            .prop_map(FormalSum::from_iter)
    }

    proptest! {
        #[test]
        fn oplus_commutes_and_adds_magnitudes(a in nonzero(), b in nonzero()) {
            prop_assert_eq!(oplus(a, b).unwrap(), oplus(b, a).unwrap());
            prop_assert_eq!(oplus(a, b).unwrap().abs(), a.abs() + b.abs());
        }

        #[test]
        fn pi_expand_shape(base in index_strategy(7)) {
            let all = pi_expand(&base).unwrap();
            prop_assert_eq!(all.len(), 1usize << (base.depth() - 1));
            for (mask, p) in all.iter().enumerate() {
                prop_assert_eq!(p.weight(), base.weight());
                let merges = (mask as u64).count_ones() as usize;
                prop_assert_eq!(p.depth(), base.depth() - merges);
            }
        }

        #[test]
        fn format_parse_round_trip(s in index_strategy(8)) {
            prop_assert_eq!(parse_index(&format_index(&s)).unwrap(), s);
        }

        #[test]
        fn formal_sum_addition_is_commutative_and_associative(
            x in formal_sum_strategy(), y in formal_sum_strategy(), z in formal_sum_strategy()
        ) {
            let mut xy = x.clone(); xy.add_sum(&y);
            let mut yx = y.clone(); yx.add_sum(&x);
            prop_assert_eq!(&xy, &yx);
            let mut xy_z = xy.clone(); xy_z.add_sum(&z);
            let mut yz = y.clone(); yz.add_sum(&z);
            let mut x_yz = x.clone(); x_yz.add_sum(&yz);
            prop_assert_eq!(&xy_z, &x_yz);
            prop_assert!(xy_z.iter().all(|(_, c)| c != 0));
            prop_assert!(x.difference(&x).is_empty());
            prop_assert_eq!(x.scaled(2).scaled(3), x.scaled(6));
        }
    }
}
