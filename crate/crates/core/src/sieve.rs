//! Smallest-prime-factor, Möbius and ω tables from a linear sieve.
//!
//! The tables are written once and are read-only afterwards. Every other
//! module reads factorizations from here, so the sieve limit bounds all
//! integer arguments in the crate.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::{Error, Result};

/// Upper bound on the table extent.
pub const MAX_LIMIT: u64 = 1 << 31;

/// Capacity of [`PrimeList`]; ω(n) ≤ 9 for every n ≤ 2³¹.
pub const MAX_OMEGA: usize = 16;

/// Distinct prime factors of one integer, ascending, stored inline.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct PrimeList {
    primes: [u32; MAX_OMEGA],
    len: u8,
}

impl PrimeList {
    pub const fn empty() -> Self {
        PrimeList { primes: [0; MAX_OMEGA], len: 0 }
    }

    #[inline]
    fn push(&mut self, p: u32) {
        self.primes[self.len as usize] = p;
        self.len += 1;
    }

    /// Product of the listed primes (the radical of the factored integer).
    pub fn product(&self) -> u64 {
        self.iter().map(|&p| u64::from(p)).product()
    }
}

impl Deref for PrimeList {
    type Target = [u32];
    #[inline]
    fn deref(&self) -> &[u32] {
        &self.primes[..self.len as usize]
    }
}

impl core::fmt::Debug for PrimeList {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

pub struct SieveTables {
    limit: u64,
    spf: Vec<u32>,
    mu: Vec<i8>,
    omega: Vec<u8>,
    primes: Vec<u32>,
}

impl core::fmt::Debug for SieveTables {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SieveTables")
            .field("limit", &self.limit)
            .field("primes", &self.primes.len())
            .finish()
    }
}

/// Linear (Euler) sieve: each composite is crossed out exactly once, by its
/// smallest prime factor, and μ and ω are filled in the same pass.
pub fn build_sieve(limit: u64) -> Result<SieveTables> {
    if !(2..=MAX_LIMIT).contains(&limit) {
        return Err(Error::Config("sieve limit must lie in 2..=2^31"));
    }
    let n = limit as usize;
    let mut spf = vec![0u32; n + 1];
    let mut mu = vec![0i8; n + 1];
    let mut omega = vec![0u8; n + 1];
    let mut primes = Vec::new();
    spf[1] = 1;
    mu[1] = 1;
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            mu[i] = -1;
            omega[i] = 1;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            if p > si {
                break;
            }
            let j = i * p as usize;
            if j > n {
                break;
            }
            spf[j] = p;
            if p == si {
                mu[j] = 0;
                omega[j] = omega[i];
            } else {
                mu[j] = -mu[i];
                omega[j] = omega[i] + 1;
            }
        }
    }
    Ok(SieveTables { limit, spf, mu, omega, primes })
}

impl SieveTables {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    #[inline]
    pub fn check(&self, n: u64) -> Result<()> {
        if n == 0 || n > self.limit {
            Err(Error::OutOfRange { value: n, limit: self.limit })
        } else {
            Ok(())
        }
    }

    /// Smallest prime factor; `spf(1) = 1`. Panics outside the table.
    #[inline]
    pub fn spf(&self, n: u64) -> u32 {
        self.spf[n as usize]
    }

    #[inline]
    pub fn mu(&self, n: u64) -> i8 {
        self.mu[n as usize]
    }

    #[inline]
    pub fn omega(&self, n: u64) -> u8 {
        self.omega[n as usize]
    }

    #[inline]
    pub fn is_squarefree(&self, n: u64) -> bool {
        self.mu[n as usize] != 0
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit && u64::from(self.spf(n)) == n
    }

    /// All primes up to the limit, ascending.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Distinct primes of `n` without range checks.
    #[inline]
    pub fn factor(&self, mut n: u64) -> PrimeList {
        let mut out = PrimeList::empty();
        while n > 1 {
            let p = self.spf[n as usize];
            out.push(p);
            while n % u64::from(p) == 0 {
                n /= u64::from(p);
            }
        }
        out
    }

    pub fn distinct_primes(&self, n: u64) -> Result<PrimeList> {
        self.check(n)?;
        Ok(self.factor(n))
    }

    /// Distinct primes of a squarefree `n` inside the table.
    pub fn squarefree_primes(&self, n: u64) -> Result<PrimeList> {
        self.check(n)?;
        if !self.is_squarefree(n) {
            return Err(Error::NotSquarefree(n));
        }
        Ok(self.factor(n))
    }

    /// Exact count of squarefree `n <= x` coprime to the squarefree `m`,
    /// by direct iteration with divisibility tests against the primes of `m`.
    pub fn squarefree_coprime_count(&self, x: u64, m: u64) -> Result<u64> {
        let primes = self.squarefree_primes(m)?;
        if x > self.limit {
            return Err(Error::OutOfRange { value: x, limit: self.limit });
        }
        Ok(count_coprime_squarefree(self, 1, x, &primes))
    }

    /// Counts of squarefree `n <= x` by ω(n); index `j` holds the ω = j count.
    pub fn omega_class_counts(&self, x: u64) -> Result<Vec<u64>> {
        if x > self.limit {
            return Err(Error::OutOfRange { value: x, limit: self.limit });
        }
        let mut counts = vec![0u64; MAX_OMEGA];
        for n in 1..=x as usize {
            if self.mu[n] != 0 {
                counts[self.omega[n] as usize] += 1;
            }
        }
        while counts.len() > 1 && counts[counts.len() - 1] == 0 {
            counts.pop();
        }
        Ok(counts)
    }
}

/// Counts squarefree `m` in `lo..=hi` divisible by none of `primes`.
#[inline]
pub fn count_coprime_squarefree(t: &SieveTables, lo: u64, hi: u64, primes: &[u32]) -> u64 {
    let lo = lo.max(1);
    if hi < lo {
        return 0;
    }
    let mut count = 0;
    'outer: for m in lo..=hi {
        if t.mu[m as usize] == 0 {
            continue;
        }
        for &p in primes {
            if m % u64::from(p) == 0 {
                continue 'outer;
            }
        }
        count += 1;
    }
    count
}

/// Prefix counts of squarefree integers, for fast exact coprime counting.
pub struct SquarefreePrefix {
    prefix: Vec<u32>,
}

impl SquarefreePrefix {
    pub fn new(t: &SieveTables) -> Self {
        let mut prefix = Vec::with_capacity(t.limit as usize + 1);
        prefix.push(0u32);
        let mut acc = 0u32;
        for n in 1..=t.limit as usize {
            acc += u32::from(t.mu[n] != 0);
            prefix.push(acc);
        }
        SquarefreePrefix { prefix }
    }

    /// Number of squarefree `n <= y`.
    #[inline]
    pub fn count(&self, y: u64) -> u64 {
        u64::from(self.prefix[y as usize])
    }

    /// Number of squarefree `n <= y` coprime to every prime in `primes`.
    ///
    /// Uses `Q_P(y) = Q_{P\p}(y) - Q_P(y/p)`: a squarefree multiple of `p`
    /// coprime to `P\p` is `p·t` with `t <= y/p` squarefree and coprime to `P`.
    pub fn coprime_count(&self, y: u64, primes: &[u32]) -> u64 {
        if y == 0 {
            return 0;
        }
        match primes.split_last() {
            None => self.count(y),
            Some((&p, rest)) => {
                self.coprime_count(y, rest) - self.coprime_count(y / u64::from(p), primes)
            }
        }
    }
}

/// Primes up to `n` by a plain sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u32> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u32);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}
