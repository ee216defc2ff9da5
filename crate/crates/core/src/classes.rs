//! Exact integer class counts behind every weighted divisor sum.
//!
//! A contributing pair `(d, n)` is recorded only through the class of `d`:
//! its ω and which override primes divide it. Since `h(d)` depends on
//! nothing else, `Σ h(d)` over all pairs is `Σ count · weight(class)`, with
//! the weight applied once per class at the very end. Two methods that visit
//! the same pairs therefore agree exactly, independent of summation order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::sieve::MAX_OMEGA;
use crate::sum::{powu, CompensatedSum};
use crate::weights::PrimeWeight;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassKey {
    /// ω(d).
    pub omega: u8,
    /// Bit `i` set when the `i`-th override prime divides `d`.
    pub flags: u16,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCounts {
    override_primes: Vec<u32>,
    classes: BTreeMap<ClassKey, u64>,
}

impl ClassCounts {
    pub fn new(override_primes: Vec<u32>) -> Self {
        ClassCounts { override_primes, classes: BTreeMap::new() }
    }

    pub fn override_primes(&self) -> &[u32] {
        &self.override_primes
    }

    pub fn classes(&self) -> &BTreeMap<ClassKey, u64> {
        &self.classes
    }

    pub fn get(&self, omega: u8, flags: u16) -> u64 {
        self.classes.get(&ClassKey { omega, flags }).copied().unwrap_or(0)
    }

    pub fn add(&mut self, key: ClassKey, count: u64) {
        if count > 0 {
            *self.classes.entry(key).or_insert(0) += count;
        }
    }

    /// Number of pairs counted, i.e. the sum evaluated at `h ≡ 1`.
    pub fn total(&self) -> u64 {
        self.classes.values().sum()
    }

    pub fn merge(&mut self, other: &ClassCounts) {
        assert_eq!(self.override_primes, other.override_primes, "class layouts differ");
        for (&k, &v) in &other.classes {
            self.add(k, v);
        }
    }

    /// Reclassifies every `d` as `d·p` for a prime `p` dividing none of them.
    pub fn shifted_by_prime(&self, p: u32) -> ClassCounts {
        let bit = self
            .override_primes
            .iter()
            .position(|&q| q == p)
            .map_or(0u16, |i| 1 << i);
        let mut out = ClassCounts::new(self.override_primes.clone());
        for (&k, &v) in &self.classes {
            assert_eq!(k.flags & bit, 0, "prime already present in class");
            out.add(ClassKey { omega: k.omega + 1, flags: k.flags | bit }, v);
        }
        out
    }

    /// `h` on one member of the class.
    pub fn class_weight(&self, key: ClassKey, w: &PrimeWeight) -> f64 {
        let set = key.flags.count_ones();
        let mut v = powu(w.base_c(), u32::from(key.omega) - set);
        for (i, &p) in self.override_primes.iter().enumerate() {
            if key.flags >> i & 1 == 1 {
                v *= w.at_prime(p);
            }
        }
        v
    }

    /// `Σ count · h(class)`, summed in key order.
    ///
    /// Every override of `w` must be one of the primes the counts were keyed by.
    pub fn evaluate(&self, w: &PrimeWeight) -> Result<f64> {
        for &(p, _) in w.overrides() {
            if !self.override_primes.contains(&p) {
                return Err(Error::Config("weight override not tracked by these class counts"));
            }
        }
        let mut s = CompensatedSum::new();
        for (&k, &v) in &self.classes {
            s.add(v as f64 * self.class_weight(k, w));
        }
        Ok(s.value())
    }
}

/// Dense scratch accumulator used inside one chunk.
pub(crate) struct ClassAccumulator {
    n_flags: usize,
    counts: Vec<u64>,
}

impl ClassAccumulator {
    pub(crate) fn new(n_overrides: usize) -> Self {
        let n_flags = 1usize << n_overrides;
        ClassAccumulator { n_flags, counts: vec![0; (MAX_OMEGA + 1) * n_flags] }
    }

    #[inline]
    pub(crate) fn add(&mut self, omega: u32, flags: u16, count: u64) {
        self.counts[omega as usize * self.n_flags + flags as usize] += count;
    }

    pub(crate) fn finish(self, override_primes: &[u32]) -> ClassCounts {
        let mut out = ClassCounts::new(override_primes.to_vec());
        for (i, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                let key = ClassKey { omega: (i / self.n_flags) as u8, flags: (i % self.n_flags) as u16 };
                out.classes.insert(key, c);
            }
        }
        out
    }
}

/// Per-prime override bits for the primes of one integer.
#[inline]
pub(crate) fn prime_bits(primes: &[u32], override_primes: &[u32], out: &mut [u16; MAX_OMEGA]) -> u16 {
    let mut all = 0u16;
    for (i, p) in primes.iter().enumerate() {
        out[i] = match override_primes.binary_search(p) {
            Ok(j) => 1 << j,
            Err(_) => 0,
        };
        all |= out[i];
    }
    all
}

pub(crate) fn merge_all(parts: Vec<ClassCounts>, override_primes: &[u32]) -> ClassCounts {
    let mut total = ClassCounts::new(override_primes.to_vec());
    for part in &parts {
        total.merge(part);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_per_class() {
        let w = PrimeWeight::non_strict(0.5, 3).unwrap().with_override(2, 0.1).unwrap();
        let mut cc = ClassCounts::new(vec![2]);
        cc.add(ClassKey { omega: 0, flags: 0 }, 1);
        cc.add(ClassKey { omega: 2, flags: 1 }, 3);
        cc.add(ClassKey { omega: 2, flags: 0 }, 2);
        assert_eq!(cc.total(), 6);
        let v = cc.evaluate(&w).unwrap();
        assert!((v - (1.0 + 3.0 * 0.05 + 2.0 * 0.25)).abs() < 1e-15);
        let other = PrimeWeight::non_strict(0.5, 3).unwrap().with_override(3, 0.1).unwrap();
        assert!(cc.evaluate(&other).is_err());
    }

    #[test]
    fn zero_weight_keeps_unit_class() {
        let w = PrimeWeight::new(0.0, 3).unwrap();
        let mut cc = ClassCounts::new(vec![]);
        cc.add(ClassKey { omega: 0, flags: 0 }, 7);
        cc.add(ClassKey { omega: 1, flags: 0 }, 9);
        assert_eq!(cc.evaluate(&w).unwrap(), 7.0);
    }

    #[test]
    fn shift_sets_override_bit() {
        let mut cc = ClassCounts::new(vec![3, 7]);
        cc.add(ClassKey { omega: 1, flags: 0b10 }, 4);
        let s = cc.shifted_by_prime(3);
        assert_eq!(s.get(2, 0b11), 4);
        let s = cc.shifted_by_prime(5);
        assert_eq!(s.get(2, 0b10), 4);
    }
}
