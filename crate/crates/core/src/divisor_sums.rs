//! Averaged full and small divisor sums over squarefree integers.
//!
//! With `μ²` restricting to squarefree `n`,
//!
//! * `S_full(x)  = Σ_{n≤x} μ²(n) Σ_{d|n} h(d)`
//! * `S_small(x) = Σ_{n≤x} μ²(n) Σ_{d|n, d^k≤n} h(d)`
//!
//! Each is produced as [`ClassCounts`] by independent traversals (by `n`, by
//! `d`, and for `S_full` through ω-classes and binomial counts) that must
//! agree exactly. The condition `d ≤ n^{1/k}` is always tested as the
//! integer inequality `d^k ≤ n`.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{binomial, integer_kth_root, pow_le};
use crate::classes::{merge_all, prime_bits, ClassAccumulator, ClassCounts, ClassKey};
use crate::sieve::{count_coprime_squarefree, SieveTables, MAX_OMEGA};
use crate::sum::CompensatedSum;
use crate::weights::{g_on_primes, PrimeWeight, MAX_ENUM_OMEGA};
use crate::{Error, Executor, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FullMethod {
    /// Enumerate every divisor of every squarefree `n ≤ x`.
    NMajor,
    /// For each squarefree `d`, count squarefree `m ≤ x/d` coprime to `d`.
    DMajor,
    /// Group `n` by ω and expand `Σ_{d|n} h(d)` binomially.
    OmegaIdentity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallMethod {
    NMajor,
    /// For each squarefree `d ≤ x^{1/k}`, count squarefree `m ∈ [d^{k-1}, x/d]` coprime to `d`.
    DMajor,
}

fn check_x(x: u64, t: &SieveTables) -> Result<()> {
    if x > t.limit() {
        Err(Error::OutOfRange { value: x, limit: t.limit() })
    } else {
        Ok(())
    }
}

fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        Err(Error::Config("k must be at least 2"))
    } else {
        Ok(())
    }
}

/// `Σ_{d|n} h(d)` by divisor enumeration.
pub fn full_divisor_sum(n: u64, w: &PrimeWeight, t: &SieveTables) -> Result<f64> {
    let primes = t.squarefree_primes(n)?;
    divisor_sum_on_primes(&primes, w, |_| true)
}

/// `Σ_{d|n, d^k ≤ n} h(d)`.
pub fn small_divisor_sum(n: u64, k: u32, w: &PrimeWeight, t: &SieveTables) -> Result<f64> {
    check_k(k)?;
    let primes = t.squarefree_primes(n)?;
    divisor_sum_on_primes(&primes, w, |d| pow_le(d, k, n))
}

fn divisor_sum_on_primes(primes: &[u32], w: &PrimeWeight, keep: impl Fn(u64) -> bool) -> Result<f64> {
    let omega = primes.len() as u32;
    if omega > MAX_ENUM_OMEGA {
        return Err(Error::TooManyPrimes { omega, max: MAX_ENUM_OMEGA });
    }
    let mut s = CompensatedSum::new();
    for mask in 0u64..(1u64 << omega) {
        let (mut d, mut h) = (1u64, 1.0);
        for (i, &p) in primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d *= u64::from(p);
                h *= w.at_prime(p);
            }
        }
        if keep(d) {
            s.add(h);
        }
    }
    Ok(s.value())
}

pub fn full_classes<E: Executor>(
    x: u64,
    w: &PrimeWeight,
    method: FullMethod,
    t: &SieveTables,
    exec: &E,
) -> Result<ClassCounts> {
    check_x(x, t)?;
    w.validate(t)?;
    let ov = w.override_primes();
    let ov = ov.as_slice();
    let parts = match method {
        FullMethod::NMajor => exec.map_chunks(1..x + 1, |r| {
            let mut acc = ClassAccumulator::new(ov.len());
            let mut bits = [0u16; MAX_OMEGA];
            for n in r {
                if !t.is_squarefree(n) {
                    continue;
                }
                let primes = t.factor(n);
                prime_bits(&primes, ov, &mut bits);
                let omega = primes.len();
                for mask in 0u32..(1 << omega) {
                    let mut flags = 0u16;
                    let mut rest = mask;
                    while rest != 0 {
                        flags |= bits[rest.trailing_zeros() as usize];
                        rest &= rest - 1;
                    }
                    acc.add(mask.count_ones(), flags, 1);
                }
            }
            acc.finish(ov)
        }),
        FullMethod::DMajor => exec.map_chunks(1..x + 1, |r| {
            let mut acc = ClassAccumulator::new(ov.len());
            let mut bits = [0u16; MAX_OMEGA];
            for d in r {
                if !t.is_squarefree(d) {
                    continue;
                }
                let primes = t.factor(d);
                let flags = prime_bits(&primes, ov, &mut bits);
                let count = count_coprime_squarefree(t, 1, x / d, &primes);
                acc.add(primes.len() as u32, flags, count);
            }
            acc.finish(ov)
        }),
        FullMethod::OmegaIdentity => {
            // Squarefree n grouped by (number of non-override primes, override flags).
            let groups = exec.map_chunks(1..x + 1, |r| {
                let mut acc = ClassAccumulator::new(ov.len());
                let mut bits = [0u16; MAX_OMEGA];
                for n in r {
                    if !t.is_squarefree(n) {
                        continue;
                    }
                    let primes = t.factor(n);
                    let flags = prime_bits(&primes, ov, &mut bits);
                    acc.add(primes.len() as u32 - flags.count_ones(), flags, 1);
                }
                acc.finish(ov)
            });
            let groups = merge_all(groups, ov);
            let mut out = ClassCounts::new(ov.to_vec());
            for (&g, &count) in groups.classes() {
                let free = u32::from(g.omega);
                // every sub-flag-set S of g.flags, including the empty set
                let mut sub = g.flags;
                loop {
                    for j in 0..=free {
                        let key = ClassKey { omega: (j + sub.count_ones()) as u8, flags: sub };
                        out.add(key, count * binomial(free, j));
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & g.flags;
                }
            }
            vec![out]
        }
    };
    Ok(merge_all(parts, ov))
}

pub fn small_classes<E: Executor>(
    x: u64,
    k: u32,
    w: &PrimeWeight,
    method: SmallMethod,
    t: &SieveTables,
    exec: &E,
) -> Result<ClassCounts> {
    check_x(x, t)?;
    check_k(k)?;
    w.validate(t)?;
    let ov = w.override_primes();
    let ov = ov.as_slice();
    let parts = match method {
        SmallMethod::NMajor => exec.map_chunks(1..x + 1, |r| {
            let mut acc = ClassAccumulator::new(ov.len());
            let mut bits = [0u16; MAX_OMEGA];
            let mut root = integer_kth_root(r.start, k);
            for n in r {
                while pow_le(root + 1, k, n) {
                    root += 1;
                }
                if !t.is_squarefree(n) {
                    continue;
                }
                let primes = t.factor(n);
                prime_bits(&primes, ov, &mut bits);
                small_divisor_walk(&primes, &bits, root, 0, 1, 0, 0, &mut acc);
            }
            acc.finish(ov)
        }),
        SmallMethod::DMajor => {
            let top = integer_kth_root(x, k);
            exec.map_chunks(1..top + 1, |r| {
                let mut acc = ClassAccumulator::new(ov.len());
                let mut bits = [0u16; MAX_OMEGA];
                for d in r {
                    if !t.is_squarefree(d) {
                        continue;
                    }
                    let primes = t.factor(d);
                    let flags = prime_bits(&primes, ov, &mut bits);
                    let lo = d.pow(k - 1);
                    let count = count_coprime_squarefree(t, lo, x / d, &primes);
                    acc.add(primes.len() as u32, flags, count);
                }
                acc.finish(ov)
            })
        }
    };
    Ok(merge_all(parts, ov))
}

/// Visits divisors `d ≤ root` of a squarefree number built from ascending `primes`.
#[allow(clippy::too_many_arguments)]
fn small_divisor_walk(
    primes: &[u32],
    bits: &[u16; MAX_OMEGA],
    root: u64,
    start: usize,
    d: u64,
    omega: u32,
    flags: u16,
    acc: &mut ClassAccumulator,
) {
    acc.add(omega, flags, 1);
    for i in start..primes.len() {
        let next = d * u64::from(primes[i]);
        if next > root {
            break;
        }
        small_divisor_walk(primes, bits, root, i + 1, next, omega + 1, flags | bits[i], acc);
    }
}

pub fn s_full<E: Executor>(x: u64, w: &PrimeWeight, method: FullMethod, t: &SieveTables, exec: &E) -> Result<f64> {
    full_classes(x, w, method, t, exec)?.evaluate(w)
}

pub fn s_small<E: Executor>(
    x: u64,
    k: u32,
    w: &PrimeWeight,
    method: SmallMethod,
    t: &SieveTables,
    exec: &E,
) -> Result<f64> {
    small_classes(x, k, w, method, t, exec)?.evaluate(w)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub x: u64,
    pub k: u32,
    pub weight: PrimeWeight,
    pub s_full: f64,
    pub s_small: f64,
    /// `s_small / s_full`.
    pub ratio: f64,
    /// `k^{-c}` for the base value `c`.
    pub predicted_limit: f64,
}

impl RatioReport {
    /// `s_full / s_small`, the constant compared against 2.
    pub fn implied_constant(&self) -> f64 {
        self.s_full / self.s_small
    }
}

/// `R_{k,x}(h)` from the by-`n` traversals.
pub fn ratio<E: Executor>(x: u64, k: u32, w: &PrimeWeight, t: &SieveTables, exec: &E) -> Result<RatioReport> {
    ratio_with(x, k, w, FullMethod::NMajor, SmallMethod::NMajor, t, exec)
}

pub fn ratio_with<E: Executor>(
    x: u64,
    k: u32,
    w: &PrimeWeight,
    full: FullMethod,
    small: SmallMethod,
    t: &SieveTables,
    exec: &E,
) -> Result<RatioReport> {
    if x == 0 {
        return Err(Error::Config("x must be at least 1"));
    }
    let s_full = s_full(x, w, full, t, exec)?;
    let s_small = s_small(x, k, w, small, t, exec)?;
    Ok(RatioReport {
        x,
        k,
        weight: w.clone(),
        s_full,
        s_small,
        ratio: s_small / s_full,
        predicted_limit: libm::pow(f64::from(k), -w.base_c()),
    })
}

fn check_prime(p: u64, t: &SieveTables) -> Result<()> {
    t.check(p)?;
    if t.is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[inline]
fn h_series_term(j: u64, w: &PrimeWeight, p: u32, t: &SieveTables) -> f64 {
    if !t.is_squarefree(j) || j % u64::from(p) == 0 {
        return 0.0;
    }
    let primes = t.factor(j);
    w.on_primes(&primes) * g_on_primes(&primes) / j as f64
}

/// `H(x,h,p) = Σ_{j≤x, p∤j} μ²(j) g(j) h(j) / j`, accumulated in ascending `j`.
pub fn h_series(x: u64, w: &PrimeWeight, p: u64, t: &SieveTables) -> Result<f64> {
    check_x(x, t)?;
    check_prime(p, t)?;
    let mut s = CompensatedSum::new();
    for j in 1..=x {
        s.add(h_series_term(j, w, p as u32, t));
    }
    Ok(s.value())
}

/// `[H(0), H(1), ..., H(x)]` from one ascending pass.
pub fn h_series_prefix(x: u64, w: &PrimeWeight, p: u64, t: &SieveTables) -> Result<Vec<f64>> {
    check_x(x, t)?;
    check_prime(p, t)?;
    let mut out = Vec::with_capacity(x as usize + 1);
    out.push(0.0);
    let mut s = CompensatedSum::new();
    for j in 1..=x {
        s.add(h_series_term(j, w, p as u32, t));
        out.push(s.value());
    }
    Ok(out)
}

/// The four sums that make `R_{k,x}` a Möbius function of `h(p)`:
/// `S_small = h(p)·A + B` and `S_full = h(p)·C + D`.
#[derive(Debug, Clone, PartialEq)]
pub struct Abcd {
    pub p: u32,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub a_classes: ClassCounts,
    pub b_classes: ClassCounts,
    pub c_classes: ClassCounts,
    pub d_classes: ClassCounts,
}

impl Abcd {
    pub fn ad_minus_bc(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// `(A v + B) / (C v + D)`, the ratio with `h(p) = v`.
    pub fn ratio_at(&self, v: f64) -> f64 {
        (self.a * v + self.b) / (self.c * v + self.d)
    }

    /// Class counts of `h(p)·A + B`, directly comparable with `S_small`.
    pub fn small_recombined(&self) -> ClassCounts {
        let mut out = self.a_classes.shifted_by_prime(self.p);
        out.merge(&self.b_classes);
        out
    }

    pub fn full_recombined(&self) -> ClassCounts {
        let mut out = self.c_classes.shifted_by_prime(self.p);
        out.merge(&self.d_classes);
        out
    }
}

/// Computes A, B, C, D as the literal double sums: for each squarefree `m`
/// with `p ∤ m`, the inner count walks the multiples of `mp` (or `m`) and
/// tests `μ² = 1` from the sieve.
pub fn abcd<E: Executor>(x: u64, k: u32, w: &PrimeWeight, p: u64, t: &SieveTables, exec: &E) -> Result<Abcd> {
    check_x(x, t)?;
    check_k(k)?;
    check_prime(p, t)?;
    w.validate(t)?;
    let ov = w.override_primes();
    let ov = ov.as_slice();
    let root = integer_kth_root(x, k);

    // Σ_{m in range, p∤m} h(m) · #{squarefree n ≤ x : step | n, n ≥ first}
    let pass = |m_max: u64, with_p: bool, small: bool| -> ClassCounts {
        let parts = exec.map_chunks(1..m_max + 1, |r| {
            let mut acc = ClassAccumulator::new(ov.len());
            let mut bits = [0u16; MAX_OMEGA];
            for m in r {
                if !t.is_squarefree(m) || m % p == 0 {
                    continue;
                }
                let primes = t.factor(m);
                let flags = prime_bits(&primes, ov, &mut bits);
                let step = if with_p { m * p } else { m };
                let first = if small { step.pow(k) } else { step };
                let mut count = 0u64;
                let mut n = first;
                while n <= x {
                    count += u64::from(t.is_squarefree(n));
                    n += step;
                }
                acc.add(primes.len() as u32, flags, count);
            }
            acc.finish(ov)
        });
        merge_all(parts, ov)
    };

    let a_classes = pass(root / p, true, true);
    let b_classes = pass(root, false, true);
    let c_classes = pass(x / p, true, false);
    let d_classes = pass(x, false, false);
    Ok(Abcd {
        p: p as u32,
        a: a_classes.evaluate(w)?,
        b: b_classes.evaluate(w)?,
        c: c_classes.evaluate(w)?,
        d: d_classes.evaluate(w)?,
        a_classes,
        b_classes,
        c_classes,
        d_classes,
    })
}
