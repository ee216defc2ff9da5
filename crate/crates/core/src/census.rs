//! Ordered k-fold factorizations of squarefree integers.
//!
//! For squarefree `n`, an ordered factorization `n = d_1 ⋯ d_k` is the same
//! thing as an assignment of each prime of `n` to one of `k` slots, so there
//! are `τ_k(n) = k^ω(n)` of them. `g_k(n)` counts, over all of them, the
//! slots with `d_i^k ≤ n`.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::integer_kth_root;
use crate::sieve::SieveTables;
use crate::sum::CompensatedSum;
use crate::{Error, Executor, Result};

/// Most assignments a single census may visit.
pub const CENSUS_BUDGET: u64 = 100_000_000;
pub const MAX_K: u32 = 16;
pub const MAX_CENSUS_OMEGA: usize = 25;
/// Most candidates a sampling population may hold.
pub const POPULATION_CAP: usize = 20_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct CensusRecord {
    pub n: u64,
    pub k: u32,
    pub omega: u32,
    pub tau_k: u64,
    pub g_k: u64,
    /// `g_k / τ_k`.
    pub ratio: f64,
    /// Assignments visited; always equal to `tau_k`.
    pub enumerated: u64,
}

impl CensusRecord {
    /// `τ_k ≤ g_k ≤ (k-1)τ_k`; only meaningful for `n > 1`.
    pub fn within_trivial_bounds(&self) -> bool {
        self.tau_k <= self.g_k && self.g_k <= u64::from(self.k - 1) * self.tau_k
    }

    /// `Σ #{i : d_i^k > n} = k·τ_k - g_k`.
    pub fn large_parts(&self) -> u64 {
        u64::from(self.k) * self.tau_k - self.g_k
    }
}

pub fn census(n: u64, k: u32, t: &SieveTables) -> Result<CensusRecord> {
    let primes = t.squarefree_primes(n)?;
    let primes: Vec<u64> = primes.iter().map(|&p| u64::from(p)).collect();
    census_on_primes(&primes, k)
}

/// Census of the squarefree number whose distinct primes are `primes`.
pub fn census_on_primes(primes: &[u64], k: u32) -> Result<CensusRecord> {
    if !(2..=MAX_K).contains(&k) {
        return Err(Error::Config("census needs 2 <= k <= 16"));
    }
    let omega = primes.len();
    if omega > MAX_CENSUS_OMEGA {
        return Err(Error::TooManyPrimes { omega: omega as u32, max: MAX_CENSUS_OMEGA as u32 });
    }
    let states = u64::from(k)
        .checked_pow(omega as u32)
        .filter(|&s| s <= CENSUS_BUDGET)
        .ok_or(Error::Budget { needed: u64::from(k).saturating_pow(omega as u32), budget: CENSUS_BUDGET })?;
    let n = primes
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .ok_or(Error::Overflow("census n"))?;
    let root = integer_kth_root(n, k);
    let k = k as usize;

    // Mixed-radix odometer: digit i is the slot holding primes[i].
    let mut digit = vec![0usize; omega];
    let mut slot = vec![1u64; k];
    slot[0] = n;
    let mut small = slot.iter().filter(|&&d| d <= root).count() as u64;
    let mut g = small;
    let mut visited = 1u64;

    let move_prime = |slot: &mut [u64], small: &mut u64, p: u64, from: usize, to: usize| {
        *small -= u64::from(slot[from] <= root) + u64::from(slot[to] <= root);
        slot[from] /= p;
        slot[to] *= p;
        *small += u64::from(slot[from] <= root) + u64::from(slot[to] <= root);
    };

    'outer: loop {
        let mut i = 0;
        loop {
            if i == omega {
                break 'outer;
            }
            let from = digit[i];
            if from + 1 < k {
                move_prime(&mut slot, &mut small, primes[i], from, from + 1);
                digit[i] = from + 1;
                break;
            }
            move_prime(&mut slot, &mut small, primes[i], from, 0);
            digit[i] = 0;
            i += 1;
        }
        g += small;
        visited += 1;
    }
    debug_assert_eq!(visited, states);

    Ok(CensusRecord {
        n,
        k: k as u32,
        omega: omega as u32,
        tau_k: states,
        g_k: g,
        ratio: g as f64 / states as f64,
        enumerated: visited,
    })
}

fn check_population_primes(omega: u32, bound: u64, t: &SieveTables) -> Result<()> {
    // The largest prime factor of any candidate is at most bound / (product of
    // the omega - 1 smallest primes); all of those must be in the table.
    let head: u128 = t.primes().iter().take(omega as usize - 1).map(|&p| u128::from(p)).product();
    let needed = (u128::from(bound) / head.max(1)) as u64;
    if needed > t.limit() {
        return Err(Error::OutOfRange { value: needed, limit: t.limit() });
    }
    Ok(())
}

/// All squarefree `n <= bound` with exactly `omega` distinct primes, ascending.
pub fn squarefree_with_omega(omega: u32, bound: u64, t: &SieveTables) -> Result<Vec<u64>> {
    if omega == 0 {
        return Ok(if bound >= 1 { vec![1] } else { vec![] });
    }
    check_population_primes(omega, bound, t)?;
    let primes = t.primes();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, u32, u128)> = vec![(0, omega, 1)];
    while let Some((start, left, prod)) = stack.pop() {
        if left == 0 {
            out.push(prod as u64);
            if out.len() > POPULATION_CAP {
                return Err(Error::Budget { needed: out.len() as u64, budget: POPULATION_CAP as u64 });
            }
            continue;
        }
        for i in start..primes.len() {
            // cheapest completion uses the next `left` consecutive primes
            let end = i + left as usize;
            if end > primes.len() {
                break;
            }
            let least = primes[i..end].iter().fold(prod, |acc, &p| acc.saturating_mul(u128::from(p)));
            if least > u128::from(bound) {
                break;
            }
            stack.push((i + 1, left - 1, prod * u128::from(primes[i])));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Distinct primes of a squarefree `n` whose prime factors all lie in the table.
fn primes_of(mut n: u64, t: &SieveTables) -> Vec<u64> {
    let mut out = Vec::new();
    for &p in t.primes() {
        if n <= t.limit() {
            break;
        }
        if n % u64::from(p) == 0 {
            out.push(u64::from(p));
            n /= u64::from(p);
        }
    }
    if n > 1 {
        out.extend(t.factor(n).iter().map(|&p| u64::from(p)));
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusSample {
    pub omega: u32,
    pub k: u32,
    pub seed: u64,
    pub bound: u64,
    /// Size of the class the sample was drawn from.
    pub population: u64,
    /// In draw order.
    pub records: Vec<CensusRecord>,
    pub mean_ratio: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

impl CensusSample {
    /// The heuristic target `k/2`.
    pub fn half_k(&self) -> f64 {
        f64::from(self.k) / 2.0
    }

    pub fn distance_from_half_k(&self) -> f64 {
        self.mean_ratio - self.half_k()
    }

    pub fn trivial_bounds_hold(&self) -> bool {
        self.records.iter().all(CensusRecord::within_trivial_bounds)
    }
}

/// Draws `count` distinct squarefree `n <= bound` with `ω(n) = omega`,
/// uniformly from the class, and runs the census on each.
#[allow(clippy::too_many_arguments)]
pub fn census_sample<E: Executor>(
    omega: u32,
    k: u32,
    count: usize,
    seed: u64,
    bound: u64,
    t: &SieveTables,
    exec: &E,
) -> Result<CensusSample> {
    if omega == 0 {
        return Err(Error::Domain("omega = 0 holds only n = 1, where the trivial bounds do not apply"));
    }
    if count == 0 {
        return Err(Error::Config("sample count must be positive"));
    }
    if !(2..=MAX_K).contains(&k) {
        return Err(Error::Config("census needs 2 <= k <= 16"));
    }
    let population = squarefree_with_omega(omega, bound, t)?;
    if population.len() < count {
        return Err(Error::InsufficientPopulation { found: population.len() as u64, requested: count as u64 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = index::sample(&mut rng, population.len(), count).into_vec();
    let records = exec.run(picks.len(), |i| census_on_primes(&primes_of(population[picks[i]], t), k));
    let records = records.into_iter().collect::<Result<Vec<_>>>()?;

    let mean = records.iter().map(|r| r.ratio).collect::<CompensatedSum>().value() / records.len() as f64;
    let min = records.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let max = records.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    Ok(CensusSample {
        omega,
        k,
        seed,
        bound,
        population: population.len() as u64,
        records,
        mean_ratio: mean,
        min_ratio: min,
        max_ratio: max,
    })
}
