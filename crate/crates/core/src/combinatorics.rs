//! Binomial coefficients and the combinatorial number system.
//!
//! A sorted k-subset `c_1 < c_2 < ... < c_k` of `0..n` has colex rank
//! `sum_i C(c_i, i)`; ranks are a bijection onto `0..C(n, k)`.

/// `C(n, k)` or `None` on `u64` overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Table of `C(v, i)` for `v < n` and `i <= k`, enough to rank and unrank
/// k-subsets of `0..n`.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    n: usize,
    k: usize,
    rows: Vec<u64>,
}

impl BinomialTable {
    /// Fails with `None` when `C(n, k)` does not fit in a `u64`.
    pub fn new(n: usize, k: usize) -> Option<Self> {
        binomial(n as u64, k as u64)?;
        let mut rows = vec![0u64; (n + 1) * (k + 1)];
        for v in 0..=n {
            rows[v * (k + 1)] = 1;
            for i in 1..=k.min(v) {
                let a = rows[(v - 1) * (k + 1) + i - 1];
                let b = if i < v {
                    rows[(v - 1) * (k + 1) + i]
                } else {
                    0
                };
                rows[v * (k + 1) + i] = a.checked_add(b)?;
            }
        }
        Some(Self { n, k, rows })
    }

    #[inline]
    pub fn get(&self, v: usize, i: usize) -> u64 {
        debug_assert!(v <= self.n && i <= self.k);
        self.rows[v * (self.k + 1) + i]
    }

    /// `C(n, k)`, the number of ranks.
    pub fn total(&self) -> u64 {
        self.get(self.n, self.k)
    }

    /// Colex rank of a strictly increasing k-subset.
    #[inline]
    pub fn rank(&self, sorted: &[usize]) -> u64 {
        debug_assert_eq!(sorted.len(), self.k);
        sorted
            .iter()
            .enumerate()
            .map(|(i, &c)| self.get(c, i + 1))
            .sum()
    }

    /// Inverse of [`rank`](Self::rank); writes the subset in increasing order.
    pub fn unrank(&self, mut rank: u64, out: &mut [usize]) {
        debug_assert_eq!(out.len(), self.k);
        debug_assert!(rank < self.total());
        let mut hi = self.n;
        for i in (1..=self.k).rev() {
            // largest c < hi with C(c, i) <= rank
            let (mut lo, mut top) = (i - 1, hi - 1);
            while lo < top {
                let mid = (lo + top).div_ceil(2);
                if self.get(mid, i) <= rank {
                    lo = mid;
                } else {
                    top = mid - 1;
                }
            }
            out[i - 1] = lo;
            rank -= self.get(lo, i);
            hi = lo;
        }
    }
}

/// Lexicographic iterator over the k-subsets of `0..n`.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
