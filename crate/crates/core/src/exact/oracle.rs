//! Brute-force evaluation straight from the nested-sum definition: one
//! odometer over index tuples, no recursion and no shared tables.

use rug::{Integer, Rational};

use super::EvalError;
use crate::index::SignedIndex;

pub const MAX_N: u64 = 64;
pub const MAX_DEPTH: usize = 5;

fn guard(n: u64, s: &SignedIndex) -> Result<(), EvalError> {
    if n > MAX_N {
        return Err(EvalError::OracleGuard(format!("n = {n} exceeds {MAX_N}")));
    }
    if s.depth() > MAX_DEPTH {
        return Err(EvalError::OracleGuard(format!(
            "depth {} exceeds {MAX_DEPTH}",
            s.depth()
        )));
    }
    Ok(())
}

fn summand(parts: &[i64], ks: &[u64]) -> Rational {
    let mut num = Integer::from(1);
    let mut den = Integer::from(1);
    for (&p, &k) in parts.iter().zip(ks) {
        if p < 0 && k % 2 == 1 {
            num = -num;
        }
        for _ in 0..p.unsigned_abs() {
            den *= k;
        }
    }
    Rational::from((num, den))
}

fn nested_sum(n: u64, s: &SignedIndex, star: bool) -> Result<Rational, EvalError> {
    guard(n, s)?;
    let parts = s.parts();
    let d = parts.len();
    if d == 0 {
        return Ok(Rational::from(1));
    }
    let gap = u64::from(!star);
    // smallest admissible value at each position, read right to left
    let floor: Vec<u64> = (0..d).map(|i| 1 + gap * (d - 1 - i) as u64).collect();
    if floor[0] > n {
        return Ok(Rational::new());
    }
    let mut ks = floor.clone();
    let mut total = Rational::new();
    loop {
        total += summand(parts, &ks);
        // advance the odometer: bump the rightmost position that can move
        let mut pos = d;
        loop {
            if pos == 0 {
                return Ok(total);
            }
            pos -= 1;
            let ceiling = if pos == 0 { n } else { ks[pos - 1] - gap };
            if ks[pos] < ceiling {
                ks[pos] += 1;
                for j in pos + 1..d {
                    ks[j] = floor[j];
                }
                break;
            }
        }
    }
}

pub fn mhs_oracle(n: u64, s: &SignedIndex) -> Result<Rational, EvalError> {
    nested_sum(n, s, false)
}

pub fn mhs_star_oracle(n: u64, s: &SignedIndex) -> Result<Rational, EvalError> {
    nested_sum(n, s, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{mhs, mhs_star};
    use crate::index::idx;

    #[test]
    fn oracle_examples() {
        assert_eq!(mhs_oracle(20, &idx(&[2, 1])).unwrap(), mhs(20, &idx(&[2, 1])));
        assert_eq!(mhs_oracle(0, &SignedIndex::empty()).unwrap(), 1);
        assert_eq!(mhs_star_oracle(0, &SignedIndex::empty()).unwrap(), 1);
        let s = idx(&[-2, 1, -1]);
        assert_eq!(mhs_oracle(5, &s).unwrap(), mhs(5, &s));
        assert_eq!(mhs_star_oracle(2, &idx(&[2, 1])).unwrap(), Rational::from((11, 8)));
        assert_eq!(mhs_oracle(2, &idx(&[1, 1, 1])).unwrap(), 0);
    }

    #[test]
    fn guard_rejects_large_inputs() {
        assert!(matches!(mhs_oracle(65, &idx(&[2])), Err(EvalError::OracleGuard(_))));
        assert!(matches!(
            mhs_star_oracle(3, &idx(&[1, 1, 1, 1, 1, 1])),
            Err(EvalError::OracleGuard(_))
        ));
    }

    #[test]
    fn depth_three_agrees_both_ways() {
        let s = idx(&[-2, -2, -2]);
        for n in 0..=8 {
            assert_eq!(mhs_oracle(n, &s).unwrap(), mhs(n, &s));
            assert_eq!(mhs_star_oracle(n, &s).unwrap(), mhs_star(n, &s));
        }
    }
}
