//! Counting ℓ-offset Hamilton cycles of the complete hypergraph.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

use super::{check_cycle_params, check_overlap, OffsetError};

/// Largest `n! * k` accepted by [`brute_force_cycle_count`].
pub const BRUTE_FORCE_LIMIT: u64 = 100_000_000;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Closed form `γ_n = n!/(2n) · (k-ℓ) / (ℓ!(k-ℓ)!)^(n/k)`, exactly.
pub fn gamma_count(n: usize, k: usize, l: usize) -> Result<BigRational, OffsetError> {
    check_overlap(k, l)?;
    if !n.is_multiple_of(k) || n == 0 {
        return Err(OffsetError::NotDivisible { n, k });
    }
    let num = factorial(n) * BigInt::from(k - l);
    let den = BigInt::from(2 * n) * num_traits::pow(factorial(l) * factorial(k - l), n / k);
    Ok(BigRational::new(num, den))
}

/// `ln E[X]` for `X` the number of ℓ-offset Hamilton cycles of H(n, p, k),
/// `E[X] = γ_n · p^(2n/k)`, evaluated with `ln Γ`. Returns `-inf` for `p = 0`.
pub fn ln_expected_cycle_count(n: usize, k: usize, l: usize, p: f64) -> Result<f64, OffsetError> {
    check_overlap(k, l)?;
    if !n.is_multiple_of(k) || n == 0 {
        return Err(OffsetError::NotDivisible { n, k });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(OffsetError::InvalidProbability(p));
    }
    let ln_gamma_n = ln_gamma(n as f64 + 1.0) - ((2 * n) as f64).ln() + ((k - l) as f64).ln()
        - (n / k) as f64 * (ln_gamma(l as f64 + 1.0) + ln_gamma((k - l) as f64 + 1.0));
    if p == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(ln_gamma_n + (2 * n / k) as f64 * p.ln())
}

/// `E[X] = γ_n · p^(2n/k)` in exact rational arithmetic.
pub fn expected_cycle_count_exact(
    n: usize,
    k: usize,
    l: usize,
    p: &BigRational,
) -> Result<BigRational, OffsetError> {
    if *p < BigRational::zero() || *p > BigRational::one() {
        return Err(OffsetError::InvalidProbability(
            p.to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(gamma_count(n, k, l)? * num_traits::pow(p.clone(), 2 * n / k))
}

/// Number of distinct ℓ-offset Hamilton cycles (as edge sets) of the complete
/// k-uniform hypergraph on `n` vertices, by exhaustive enumeration.
///
/// Every arrangement of `0..n` in a row, read cyclically, is cut into groups of
/// sizes ℓ, k-ℓ, ℓ, ... starting at each of the `k` possible offsets; the edge
/// set `{G_i ∪ G_{i+1}}` is canonicalized and counted once. Limited to
/// `n! · k <= BRUTE_FORCE_LIMIT`.
pub fn brute_force_cycle_count(n: usize, k: usize, l: usize) -> Result<u64, OffsetError> {
    check_cycle_params(n, k, l)?;
    let configs = (1..=n as u64)
        .try_fold(k as u64, |acc, i| acc.checked_mul(i))
        .filter(|&c| c <= BRUTE_FORCE_LIMIT && n <= 64);
    if configs.is_none() {
        return Err(OffsetError::TooLargeForBruteForce {
            n,
            k,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let m = 2 * n / k;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut groups = vec![0u64; m];
    let mut edges = vec![0u64; m];
    let mut visit = |perm: &[usize]| {
        for shift in 0..k {
            let mut pos = shift;
            for (i, g) in groups.iter_mut().enumerate() {
                let size = if i % 2 == 0 { l } else { k - l };
                *g = 0;
                for _ in 0..size {
                    *g |= 1u64 << perm[pos % n];
                    pos += 1;
                }
            }
            for i in 0..m {
                edges[i] = groups[i] | groups[(i + 1) % m];
            }
            let mut key = edges.clone();
            key.sort_unstable();
            seen.insert(key);
        }
    };
    // Heap's algorithm
    let mut c = vec![0usize; n];
    visit(&perm);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(seen.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(gamma_count(6, 3, 1).unwrap(), int(30));
        assert_eq!(gamma_count(8, 4, 2).unwrap(), int(315));
        assert_eq!(gamma_count(9, 3, 1).unwrap(), int(5040));
        assert!(gamma_count(7, 3, 1).is_err());
        assert!(gamma_count(6, 3, 2).is_err());
    }

    #[test]
    fn expected_count_edges() {
        assert_eq!(
            ln_expected_cycle_count(6, 3, 1, 0.0).unwrap(),
            f64::NEG_INFINITY
        );
        assert!((ln_expected_cycle_count(6, 3, 1, 1.0).unwrap() - 30f64.ln()).abs() < 1e-12);
        assert_eq!(
            expected_cycle_count_exact(6, 3, 1, &int(1)).unwrap(),
            int(30)
        );
        assert_eq!(
            expected_cycle_count_exact(6, 3, 1, &int(0)).unwrap(),
            int(0)
        );
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        // 30 / 2^4
        assert_eq!(
            expected_cycle_count_exact(6, 3, 1, &half).unwrap(),
            BigRational::new(BigInt::from(30), BigInt::from(16))
        );
        assert!(ln_expected_cycle_count(6, 3, 1, 1.5).is_err());
    }

    #[test]
    fn log_and_exact_paths_agree() {
        for (n, k, l) in [(6, 3, 1), (12, 4, 2), (24, 6, 3), (30, 5, 2)] {
            for p in [0.5f64, 0.125, 0.8] {
                let exact =
                    expected_cycle_count_exact(n, k, l, &BigRational::from_float(p).unwrap())
                        .unwrap()
                        .to_f64()
                        .unwrap();
                let ln = ln_expected_cycle_count(n, k, l, p).unwrap();
                assert!((exact.ln() - ln).abs() < 1e-9, "{n} {k} {l} {p}");
            }
        }
    }

    #[test]
    fn brute_force_guard() {
        assert!(matches!(
            brute_force_cycle_count(12, 3, 1),
            Err(OffsetError::TooLargeForBruteForce { .. })
        ));
    }
}
