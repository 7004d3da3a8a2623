use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rug::{Integer, Rational};

use super::{term, BinomialCache, Companion, EvalError};
use crate::index::SignedIndex;

type Table = Arc<Vec<Rational>>;

/// Memoizing evaluator: suffix tables `H_k(s_i,…,s_m)` for `k = 0..=n` are
/// computed depth-first and shared between calls and threads.
///
/// The memo stops accepting entries once `capacity` tables are stored; it
/// never changes a result, only how often a table is rebuilt.
pub struct MhsEngine {
    binomials: BinomialCache,
    memo: RwLock<HashMap<(Vec<i64>, bool), Table>>,
    capacity: usize,
}

impl MhsEngine {
    /// `n_max` sizes the binomial table (rows up to `2 n_max`).
    pub fn new(n_max: usize, capacity: usize) -> Self {
        MhsEngine {
            binomials: BinomialCache::new(2 * n_max),
            memo: RwLock::new(HashMap::new()),
            capacity,
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    fn table(&self, suffix: &[i64], star: bool, n: usize) -> Table {
        if suffix.is_empty() {
            return Arc::new(vec![Rational::from(1); n + 1]);
        }
        let key = (suffix.to_vec(), star);
        if let Some(t) = self.memo.read().expect("memo lock").get(&key) {
            if t.len() > n {
                return Arc::clone(t);
            }
        }
        let inner = self.table(&suffix[1..], star, n);
        let head = suffix[0];
        let mut out = Vec::with_capacity(n + 1);
        out.push(Rational::new());
        for k in 1..=n {
            let prev = if star { &inner[k] } else { &inner[k - 1] };
            let step = term(head, k as u64) * prev;
            let value = Rational::from(&out[k - 1] + &step);
            out.push(value);
        }
        let table = Arc::new(out);
        let mut memo = self.memo.write().expect("memo lock");
        if memo.len() < self.capacity || memo.contains_key(&key) {
            memo.insert(key, Arc::clone(&table));
        }
        table
    }

    pub fn mhs(&self, n: u64, s: &SignedIndex) -> Rational {
        self.table(s.parts(), false, n as usize)[n as usize].clone()
    }

    pub fn mhs_star(&self, n: u64, s: &SignedIndex) -> Rational {
        self.table(s.parts(), true, n as usize)[n as usize].clone()
    }

    fn binomial(&self, n: u64, k: u64) -> Integer {
        if self.binomials.contains(n as usize) {
            self.binomials.get(n as usize, k as usize).clone()
        } else {
            Integer::from(n).binomial(k as u32)
        }
    }

    pub fn mollified(
        &self,
        companion: Companion,
        n: u64,
        s: &SignedIndex,
    ) -> Result<Rational, EvalError> {
        let (&head, tail) = s.parts().split_first().ok_or(EvalError::EmptyIndex)?;
        if n == 0 {
            return Err(EvalError::ZeroN);
        }
        let inner = self.table(tail, false, n as usize);
        let mut total = Rational::new();
        for k in 1..=n {
            let h = &inner[(k - 1) as usize];
            if *h == 0 {
                continue;
            }
            let weight = match companion {
                Companion::Small => Rational::from(self.binomial(n, k)),
                Companion::Big => Rational::from((self.binomial(n, k), self.binomial(n + k, k))),
            };
            total += term(head, k) * weight * h;
        }
        Ok(total)
    }
}
