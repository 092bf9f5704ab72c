//! Exact binomial coefficients.
//!
//! `C(n, r)` is taken to be zero whenever `r < 0` or `r > n`, so closed forms
//! such as `C(n - k - 3, k - 3)` stay well defined at small `k`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{ensure_domain, Result};

/// Largest ground set supported by the machine-word tables.
pub const MAX_TABLE_N: u32 = 64;

/// Exact `C(n, r)`; zero for `r < 0` or `r > n`, error for `n < 0`.
pub fn binomial(n: i64, r: i64) -> Result<BigInt> {
    ensure_domain!(n >= 0, "binomial top argument must be non-negative, got {n}");
    Ok(choose(n, r))
}

/// Total version of [`binomial`] used internally: zero unless `0 <= r <= n`.
pub fn choose(n: i64, r: i64) -> BigInt {
    if r < 0 || r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn table() -> &'static Vec<Vec<u64>> {
    static TABLE: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let size = MAX_TABLE_N as usize + 1;
        let mut t = vec![vec![0u64; size]; size];
        for n in 0..size {
            t[n][0] = 1;
            for r in 1..=n {
                t[n][r] = t[n - 1][r - 1] + if r < n { t[n - 1][r] } else { 0 };
            }
        }
        t
    })
}

/// Machine-word `C(n, r)` for `n <= 64`, zero when `r > n`.
#[inline]
pub fn choose_u64(n: u32, r: u32) -> u64 {
    if r > n {
        return 0;
    }
    assert!(n <= MAX_TABLE_N, "choose_u64 supports n <= {MAX_TABLE_N}");
    table()[n as usize][r as usize]
}
