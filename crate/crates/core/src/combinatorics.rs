//! Factorials and binomial coefficients for spin weights up to `n = 40`.

use std::sync::LazyLock;

/// Largest supported `n = 2l`.
pub const MAX_TWICE_SPIN: u32 = 40;

static FACTORIALS: LazyLock<[f64; MAX_TWICE_SPIN as usize + 1]> = LazyLock::new(|| {
    let mut table = [1.0; MAX_TWICE_SPIN as usize + 1];
    for k in 1..table.len() {
        table[k] = table[k - 1] * k as f64;
    }
    table
});

/// `k!` as a float, for `k ≤ 40`.
///
/// # Panics
///
/// If `k > 40`. Callers validate weights through `SpinWeight` first.
pub fn factorial(k: u32) -> f64 {
    FACTORIALS[k as usize]
}

/// Exact `C(n, k)` for `0 ≤ k ≤ n ≤ 67` (fits in `u64` up to there).
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc: u64 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Generalized binomial `C(m, s) = m(m−1)…(m−s+1)/s!` for any integer `m`.
///
/// Vanishes for `0 ≤ m < s`, and is `(−1)^s C(s−m−1, s)` for negative `m`.
/// Exact while the result fits in `i128` (`|m| ≤ 80`, `s ≤ 40` is ample).
pub fn generalized_binomial_exact(m: i64, s: u32) -> i128 {
    let mut acc: i128 = 1;
    for i in 0..s as i128 {
        // The running product of i+1 consecutive integers is divisible by (i+1)!.
        acc = acc * (m as i128 - i) / (i + 1);
    }
    acc
}

/// [`generalized_binomial_exact`] converted to a float.
pub fn generalized_binomial(m: i64, s: u32) -> f64 {
    generalized_binomial_exact(m, s) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(5), 120.0);
        assert_eq!(factorial(20), 2_432_902_008_176_640_000.0);
    }

    #[test]
    fn binomials_match_pascal() {
        for n in 1..=40u32 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
        assert_eq!(binomial(40, 20), 137_846_528_820);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn generalized_binomial_negative_upper() {
        // C(-1, s) = (-1)^s
        for s in 0..10 {
            assert_eq!(generalized_binomial(-1, s), if s % 2 == 0 { 1.0 } else { -1.0 });
        }
        // C(-3, 2) = (-3)(-4)/2 = 6
        assert_eq!(generalized_binomial(-3, 2), 6.0);
        // vanishes for 0 <= m < s
        assert_eq!(generalized_binomial(2, 3), 0.0);
        assert_eq!(generalized_binomial(0, 1), 0.0);
        assert_eq!(generalized_binomial(7, 3), 35.0);
        assert_eq!(generalized_binomial_exact(80, 40), 107_507_208_733_336_176_461_620);
        assert_eq!(generalized_binomial_exact(-41, 40), 107_507_208_733_336_176_461_620);
    }
}
