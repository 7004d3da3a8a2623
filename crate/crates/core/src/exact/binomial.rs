use rug::Integer;

/// Pascal's triangle up to row `n_max`, built once and read-only afterwards.
#[derive(Debug, Clone)]
pub struct BinomialCache {
    rows: Vec<Vec<Integer>>,
}

impl BinomialCache {
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![Integer::from(1)]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(Integer::from(1));
            for k in 1..n {
                row.push(Integer::from(&prev[k - 1] + &prev[k]));
            }
            row.push(Integer::from(1));
            rows.push(row);
        }
        BinomialCache { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, k)` for `k <= n <= n_max`; panics outside the table.
    pub fn get(&self, n: usize, k: usize) -> &Integer {
        assert!(k <= n, "C({n}, {k}) requested with k > n");
        &self.rows[n][k]
    }

    pub fn contains(&self, n: usize) -> bool {
        n < self.rows.len()
    }
}
