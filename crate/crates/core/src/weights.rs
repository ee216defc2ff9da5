//! Multiplicative weights on squarefree integers and the auxiliary
//! multiplicative functions g, τ_k and E.

use alloc::vec::Vec;

use crate::sieve::SieveTables;
use crate::sum::CompensatedSum;
use crate::{Error, Result};

/// Most per-prime overrides a weight may carry; class flags are 16 bits wide.
pub const MAX_OVERRIDES: usize = 12;

/// Largest ω for which divisor enumeration (2^ω terms) is attempted.
pub const MAX_ENUM_OMEGA: u32 = 25;

/// A multiplicative weight `h`, determined on squarefree integers by its
/// values at primes: `base_c` everywhere except at the listed overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeWeight {
    base_c: f64,
    overrides: Vec<(u32, f64)>,
    k_context: u32,
    strict: bool,
}

fn check_value(v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain("weight values must be finite and non-negative"))
    }
}

impl PrimeWeight {
    /// Strict weight: every prime value must lie strictly below `1/(k-1)`.
    pub fn new(base_c: f64, k_context: u32) -> Result<Self> {
        Self::build(base_c, k_context, true)
    }

    /// Accepts any non-negative prime values, including the region past `1/(k-1)`.
    pub fn non_strict(base_c: f64, k_context: u32) -> Result<Self> {
        Self::build(base_c, k_context, false)
    }

    pub fn with_mode(base_c: f64, k_context: u32, strict: bool) -> Result<Self> {
        Self::build(base_c, k_context, strict)
    }

    fn build(base_c: f64, k_context: u32, strict: bool) -> Result<Self> {
        if k_context < 2 {
            return Err(Error::Config("k must be at least 2"));
        }
        check_value(base_c)?;
        let w = PrimeWeight { base_c, overrides: Vec::new(), k_context, strict };
        if strict && base_c >= w.bound() {
            return Err(Error::Domain("strict mode requires c < 1/(k-1)"));
        }
        Ok(w)
    }

    /// Sets `h(p) = value`, replacing any earlier override at `p`.
    pub fn with_override(self, p: u32, value: f64) -> Result<Self> {
        if self.strict && value >= self.bound() {
            return Err(Error::Domain("strict mode requires every override < 1/(k-1)"));
        }
        self.insert_override(p, value)
    }

    /// Like [`with_override`](Self::with_override) but admits `value = 1/(k-1)`
    /// in strict mode; used when scanning a single prime up to the boundary.
    pub fn with_boundary_override(self, p: u32, value: f64) -> Result<Self> {
        if self.strict && value > self.bound() {
            return Err(Error::Domain("strict mode requires every override <= 1/(k-1)"));
        }
        self.insert_override(p, value)
    }

    fn insert_override(mut self, p: u32, value: f64) -> Result<Self> {
        check_value(value)?;
        if p < 2 {
            return Err(Error::NotPrime(u64::from(p)));
        }
        match self.overrides.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => self.overrides[i].1 = value,
            Err(i) => {
                if self.overrides.len() == MAX_OVERRIDES {
                    return Err(Error::Config("too many per-prime overrides (max 12)"));
                }
                self.overrides.insert(i, (p, value));
            }
        }
        Ok(self)
    }

    pub fn base_c(&self) -> f64 {
        self.base_c
    }

    pub fn k_context(&self) -> u32 {
        self.k_context
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// `1/(k-1)`.
    pub fn bound(&self) -> f64 {
        1.0 / f64::from(self.k_context - 1)
    }

    /// Overrides sorted by prime.
    pub fn overrides(&self) -> &[(u32, f64)] {
        &self.overrides
    }

    pub fn override_primes(&self) -> Vec<u32> {
        self.overrides.iter().map(|&(p, _)| p).collect()
    }

    #[inline]
    pub fn at_prime(&self, p: u32) -> f64 {
        match self.overrides.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => self.overrides[i].1,
            Err(_) => self.base_c,
        }
    }

    /// Overrides must name primes inside the sieve.
    pub fn validate(&self, t: &SieveTables) -> Result<()> {
        for &(p, _) in &self.overrides {
            let p = u64::from(p);
            if p > t.limit() {
                return Err(Error::OutOfRange { value: p, limit: t.limit() });
            }
            if !t.is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        Ok(())
    }

    /// `h` on the squarefree integer with the given distinct primes.
    #[inline]
    pub fn on_primes(&self, primes: &[u32]) -> f64 {
        primes.iter().fold(1.0, |acc, &p| acc * self.at_prime(p))
    }
}

pub fn h_eval(n: u64, w: &PrimeWeight, t: &SieveTables) -> Result<f64> {
    Ok(w.on_primes(&t.squarefree_primes(n)?))
}

/// `g(m) = Π_{p|m} p/(p+1)`.
pub fn g_eval(m: u64, t: &SieveTables) -> Result<f64> {
    Ok(g_on_primes(&t.squarefree_primes(m)?))
}

#[inline]
pub fn g_on_primes(primes: &[u32]) -> f64 {
    primes.iter().fold(1.0, |acc, &p| acc * (f64::from(p) / (f64::from(p) + 1.0)))
}

/// `τ_k(n) = k^ω(n)` for squarefree `n`.
pub fn tau_k_squarefree(n: u64, k: u32, t: &SieveTables) -> Result<u64> {
    if k < 2 {
        return Err(Error::Config("k must be at least 2"));
    }
    let primes = t.squarefree_primes(n)?;
    u64::from(k).checked_pow(primes.len() as u32).ok_or(Error::Overflow("tau_k"))
}

/// `E(m) = Σ_{d|m} 1/√d` for squarefree `m`.
pub fn e_of_m(m: u64, t: &SieveTables) -> Result<f64> {
    let primes = t.squarefree_primes(m)?;
    e_on_primes(&primes)
}

pub fn e_on_primes(primes: &[u32]) -> Result<f64> {
    let w = primes.len() as u32;
    if w > MAX_ENUM_OMEGA {
        return Err(Error::TooManyPrimes { omega: w, max: MAX_ENUM_OMEGA });
    }
    let mut s = CompensatedSum::new();
    for mask in 0u64..(1u64 << w) {
        let d: f64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| f64::from(p))
            .product();
        s.add(1.0 / libm::sqrt(d));
    }
    Ok(s.value())
}

/// `2^{2/3}`, the value of `τ(p)^{2/3}`.
pub fn two_pow_two_thirds() -> f64 {
    libm::cbrt(4.0)
}

/// Largest `c` with `2^{2/3}c - 1 < c`, i.e. `1/(2^{2/3} - 1)`.
pub fn t_c_threshold() -> f64 {
    1.0 / (two_pow_two_thirds() - 1.0)
}

/// `t_c = 2^{2/3} c`.
pub fn t_c(c: f64) -> f64 {
    two_pow_two_thirds() * c
}

/// Left side `τ(p)^{2/3} g(p) h(p)` and right side `2^{2/3}·(3/2)·1/(k-1)` of
/// the pointwise bound at a prime.
pub fn pointwise_bound(p: u32, w: &PrimeWeight) -> (f64, f64) {
    let lhs = two_pow_two_thirds() * g_on_primes(&[p]) * w.at_prime(p);
    let rhs = two_pow_two_thirds() * 1.5 * w.bound();
    (lhs, rhs)
}
