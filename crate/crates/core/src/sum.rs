//! Compensated floating-point accumulation.

/// Neumaier's variant of Kahan summation.
///
/// The result depends only on the order in which terms are added, so a fixed
/// ascending order gives bit-reproducible totals.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub const fn new() -> Self {
        CompensatedSum { sum: 0.0, comp: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another partial in; used for fixed-order combines of chunk partials.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl core::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Sum of `xs` in iteration order with compensation.
pub fn compensated<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    xs.into_iter().collect::<CompensatedSum>().value()
}

/// `base^exp` by repeated multiplication; `0^0 = 1`.
#[inline]
pub fn powu(base: f64, exp: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let naive: f64 = [1.0, 1e100, 1.0, -1e100].iter().sum();
        assert_eq!(naive, 0.0);
        assert_eq!(compensated([1.0, 1e100, 1.0, -1e100]), 2.0);
    }

    #[test]
    fn harmonic_matches_reference() {
        // H_{10^6} = ln(10^6) + gamma + 1/(2n) - 1/(12n^2) + ...
        let n = 1_000_000u32;
        let s = compensated((1..=n).map(|j| 1.0 / j as f64));
        let n = n as f64;
        let reference = libm::log(n) + 0.577_215_664_901_532_9 + 0.5 / n - 1.0 / (12.0 * n * n);
        assert!((s - reference).abs() < 1e-14);
    }

    #[test]
    fn zero_to_the_zero() {
        assert_eq!(powu(0.0, 0), 1.0);
        assert_eq!(powu(0.0, 3), 0.0);
        assert_eq!(powu(0.5, 3), 0.125);
    }
}
