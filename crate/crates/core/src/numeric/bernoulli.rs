use rug::ops::Pow;
use rug::{Integer, Rational};

use super::NumericError;

/// Exact Bernoulli numbers `B_0..=B_max` (with `B_1 = -1/2`).
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    /// Builds the table from `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
    pub fn new(max: usize) -> Self {
        let mut values: Vec<Rational> = Vec::with_capacity(max + 1);
        values.push(Rational::from(1));
        for m in 1..=max {
            let mut acc = Rational::new();
            for (j, b) in values.iter().enumerate() {
                acc += Rational::from(Integer::from(m + 1).binomial(j as u32)) * b;
            }
            values.push(-acc / Integer::from(m + 1));
        }
        BernoulliTable { values }
    }

    pub fn max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, k: usize) -> Result<&Rational, NumericError> {
        self.values.get(k).ok_or(NumericError::OutOfRange { what: "Bernoulli index", value: k, max: self.max() })
    }

    /// `β_n = (-1)^n (2 - 2^{2n}) B_{2n} / (2n)!`.
    pub fn beta(&self, n: usize) -> Result<Rational, NumericError> {
        let b = self.get(2 * n)?;
        let factor = Integer::from(2) - Integer::from(2).pow(2 * n as u32);
        let mut value = Rational::from(b * factor) / Integer::from(Integer::factorial(2 * n as u32));
        if n % 2 == 1 {
            value = -value;
        }
        Ok(value)
    }
}

pub fn bernoulli(k: usize) -> Result<Rational, NumericError> {
    BernoulliTable::new(k).get(k).cloned()
}

pub fn beta_coeff(n: usize) -> Result<Rational, NumericError> {
    BernoulliTable::new(2 * n).beta(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn known_values() {
        assert_eq!(bernoulli(0).unwrap(), 1);
        assert_eq!(bernoulli(1).unwrap(), q(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli(4).unwrap(), q(-1, 30));
        assert_eq!(bernoulli(12).unwrap(), q(-691, 2730));
        assert_eq!(beta_coeff(0).unwrap(), 1);
        assert_eq!(beta_coeff(1).unwrap(), q(1, 6));
        assert_eq!(beta_coeff(2).unwrap(), q(7, 360));
    }

    #[test]
    fn table_invariants() {
        let table = BernoulliTable::new(40);
        for k in (3..=40).step_by(2) {
            assert_eq!(*table.get(k).unwrap(), 0);
        }
        for m in 1..=40usize {
            let sum: Rational = (0..=m)
                .map(|j| Rational::from(Integer::from(m + 1).binomial(j as u32)) * table.get(j).unwrap())
                .sum();
            assert_eq!(sum, 0);
        }
        assert!(table.get(41).is_err());
    }
}
