//! Overflow-safe integer helpers.

/// True when `base^exp <= n`, computed without overflow.
#[inline]
pub fn pow_le(base: u64, exp: u32, n: u64) -> bool {
    if base <= 1 || exp == 0 {
        return (if exp == 0 { 1 } else { base }) <= n;
    }
    let mut acc: u64 = 1;
    for _ in 0..exp {
        match acc.checked_mul(base) {
            Some(v) if v <= n => acc = v,
            _ => return false,
        }
    }
    true
}

/// `base^exp` or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// The unique `r` with `r^k <= n < (r+1)^k`.
pub fn integer_kth_root(n: u64, k: u32) -> u64 {
    assert!(k >= 1, "root index must be positive");
    if k == 1 || n <= 1 {
        return n;
    }
    if k >= 64 {
        return 1;
    }
    let guess = libm::pow(n as f64, 1.0 / k as f64) as u64;
    let mut r = guess.max(1);
    while !pow_le(r, k, n) {
        r -= 1;
    }
    while pow_le(r + 1, k, n) {
        r += 1;
    }
    r
}

pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * u64::from(n - i) / u64::from(i + 1);
    }
    acc
}
