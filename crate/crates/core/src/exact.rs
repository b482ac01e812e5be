//! Closed-form distinguishing number of `K_n x K_m`.
//!
//! With `k` the unique integer `>= 2` such that `(k-1)^n < m <= k^n` and
//! `t = ⌈log_k n⌉`, the value is `k` when `m <= k^n - t - 1` and `k + 1` when
//! `m >= k^n - t + 1`. The single borderline column count `m = k^n - t` is
//! resolved here by exhaustive search for a distinguishing `k`-coloring.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::grid::{GridError, GridSpec};
use crate::oracle::{self, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("borderline case undecided within budget: value is {lower} or {upper} ({source})")]
    Indeterminate { lower: usize, upper: usize, source: OracleError },
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Resolution {
    Formula,
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistNumberResult {
    pub k_band: usize,
    pub value: usize,
    pub borderline: bool,
    pub resolution: Resolution,
}

fn pow(base: usize, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}

/// The unique `k >= 2` with `(k-1)^n < m <= k^n`, by exact integer search.
pub fn band(n: usize, m: usize) -> usize {
    assert!(n >= 1 && m >= 2, "band needs n >= 1 and m >= 2");
    let target = BigUint::from(m);
    // k = m always satisfies k^n >= m; binary search the least such k >= 2
    let (mut lo, mut hi) = (2usize, m.max(2));
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pow(mid, n) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Smallest `t >= 0` with `k^t >= n`.
pub fn ceil_log(k: usize, n: usize) -> usize {
    assert!(k >= 2 && n >= 1);
    let target = BigUint::from(n);
    let mut power = BigUint::one();
    let mut t = 0;
    while power < target {
        power *= k;
        t += 1;
    }
    t
}

/// The borderline column count `k^n - ⌈log_k n⌉` for band `k`.
pub fn borderline_columns(n: usize, k: usize) -> BigUint {
    pow(k, n) - BigUint::from(ceil_log(k, n))
}

pub fn distinguishing_number(n: usize, m: usize, search_budget: u128) -> Result<DistNumberResult, ExactError> {
    let grid = GridSpec::new(n, m)?;
    let k = band(n, m);
    let borderline = borderline_columns(n, k);
    let m_big = BigUint::from(m);
    if m_big != borderline {
        let value = if m_big < borderline { k } else { k + 1 };
        return Ok(DistNumberResult { k_band: k, value, borderline: false, resolution: Resolution::Formula });
    }
    match oracle::find_distinguishing_k_coloring(grid, k, search_budget) {
        Ok(found) => Ok(DistNumberResult {
            k_band: k,
            value: if found.is_some() { k } else { k + 1 },
            borderline: true,
            resolution: Resolution::Search,
        }),
        Err(source) => Err(ExactError::Indeterminate { lower: k, upper: k + 1, source }),
    }
}
