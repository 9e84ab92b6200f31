//! Exact golden-ratio floors in integer arithmetic.
//!
//! `φ = (1 + √5) / 2`. For `n > 0`, `√(5n²)` is irrational, so
//! `⌊(n + √(5n²)) / 2⌋ = ⌊(n + ⌊√(5n²)⌋) / 2⌋` and likewise for the
//! difference. No floating point is involved.

use crate::Error;

pub const PHI: f64 = 1.618_033_988_749_895;

fn isqrt_5n2(n: u64) -> Result<u128, Error> {
    let n = n as u128;
    let sq = n
        .checked_mul(n)
        .and_then(|v| v.checked_mul(5))
        .ok_or(Error::Overflow(format!("5·{n}² does not fit in 128 bits")))?;
    Ok(sq.isqrt())
}

/// `⌊φ n⌋`.
pub fn floor_phi(n: u64) -> Result<u64, Error> {
    let s = isqrt_5n2(n)?;
    u64::try_from((n as u128 + s) / 2).map_err(|_| Error::Overflow(format!("⌊φ·{n}⌋ exceeds u64")))
}

/// `⌊n / φ⌋ = ⌊(φ - 1) n⌋`.
pub fn floor_div_phi(n: u64) -> Result<u64, Error> {
    let s = isqrt_5n2(n)?;
    Ok(((s - n as u128) / 2) as u64)
}

/// `⌈log_φ n⌉` for `n ≥ 1` (0 for `n ≤ 1`), without floating point.
///
/// Uses `φ^k = F(k)·φ + F(k-1)`, so `φ^k ≥ n` iff `F(k)·√5 ≥ 2(n - F(k-1)) - F(k)`.
pub fn ceil_log_phi(n: u64) -> u32 {
    if n <= 1 {
        return 0;
    }
    let (mut f_prev, mut f) = (0i128, 1i128);
    let mut k = 1u32;
    loop {
        let rhs = 2 * (n as i128 - f_prev) - f;
        if rhs <= 0 || 5 * f * f >= rhs * rhs {
            return k;
        }
        (f_prev, f) = (f, f + f_prev);
        k += 1;
    }
}
