//! Euler-product constants, Γ, the Gaussian window and main-term predictors.
//!
//! ```text
//! f0(z) = Π_p (1 + z/p)     (1 - 1/p)^z
//! f1(z) = Π_p (1 + z/(p+1)) (1 - 1/p)^z
//! ```
//!
//! Products are taken over primes up to a truncation bound as compensated sums
//! of log-factors and exponentiated once. Each log-factor is `O(1/p²)`, which
//! gives the tail estimate carried alongside the value.

use core::f64::consts::PI;

use crate::sieve::{primes_up_to, SieveTables};
use crate::sum::{powu, CompensatedSum};
use crate::weights::g_on_primes;
use crate::{Error, Result};

/// ζ(2) = π²/6.
pub const ZETA_2: f64 = PI * PI / 6.0;

/// 6/π², the density of squarefree integers.
pub const SQUAREFREE_DENSITY: f64 = 6.0 / (PI * PI);

pub const DEFAULT_TRUNCATION: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Product {
    F0,
    F1,
}

impl Product {
    pub fn name(self) -> &'static str {
        match self {
            Product::F0 => "f0",
            Product::F1 => "f1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerConstant {
    pub z: f64,
    pub value: f64,
    /// Largest prime included in the product.
    pub truncation_prime: u64,
    /// Estimated size of the omitted log-tail over primes past the truncation.
    pub tail_bound: f64,
}

pub fn f0(z: f64, truncation: u64) -> Result<EulerConstant> {
    euler_product(Product::F0, z, truncation)
}

pub fn f1(z: f64, truncation: u64) -> Result<EulerConstant> {
    euler_product(Product::F1, z, truncation)
}

pub fn euler_product(which: Product, z: f64, truncation: u64) -> Result<EulerConstant> {
    if truncation < 100 {
        return Err(Error::Config("Euler-product truncation must be at least 100"));
    }
    check_z(z)?;
    euler_product_over(which, z, truncation, &primes_up_to(truncation))
}

fn check_z(z: f64) -> Result<()> {
    if !(z > 0.0 && z <= 4.0) {
        return Err(Error::Domain("Euler products need 0 < z <= 4"));
    }
    Ok(())
}

/// Product over an explicit ascending list of primes, all `<= truncation`.
pub fn euler_product_over(which: Product, z: f64, truncation: u64, primes: &[u32]) -> Result<EulerConstant> {
    check_z(z)?;
    let mut s = CompensatedSum::new();
    for &p in primes {
        let p = f64::from(p);
        let first = match which {
            Product::F0 => libm::log1p(z / p),
            Product::F1 => libm::log1p(z / (p + 1.0)),
        };
        s.add(first + z * libm::log1p(-1.0 / p));
    }
    Ok(EulerConstant {
        z,
        value: libm::exp(s.value()),
        truncation_prime: primes.last().map_or(1, |&p| u64::from(p)),
        tail_bound: tail_bound(which, z, truncation as f64),
    })
}

/// Upper estimate of `Σ_{p>P} |log-factor(p)|`.
///
/// The log-factor expands as `-a(z)/p² + O(z³/p³)` with `a = z(z+1)/2` for
/// f0 and `a = z(z+3)/2` for f1. The prime sum `Σ_{p>P} 1/p²` is taken as
/// the prime-number-theorem integral `E1(ln P)`, bounded above by its
/// asymptotic series cut after the positive `2/ln²P` term.
fn tail_bound(which: Product, z: f64, p: f64) -> f64 {
    let a = match which {
        Product::F0 => z * (z + 1.0) / 2.0,
        Product::F1 => z * (z + 3.0) / 2.0,
    };
    let l = libm::log(p);
    let prime_tail = (1.0 - 1.0 / l + 2.0 / (l * l)) / (p * l);
    a * (1.0 + (z + 1.0) / p) * prime_tail
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(z) for real `z > 0` (Lanczos, g = 7, nine terms; reflection below 1/2).
pub fn gamma_fn(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain("gamma_fn needs a finite z > 0"));
    }
    Ok(gamma_positive(z))
}

fn gamma_positive(z: f64) -> f64 {
    if z < 0.5 {
        return PI / (libm::sin(PI * z) * gamma_positive(1.0 - z));
    }
    let x = z - 1.0;
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    libm::sqrt(2.0 * PI) * libm::pow(t, x + 0.5) * libm::exp(-t) * a
}

const FRAC_2_SQRT_PI: f64 = core::f64::consts::FRAC_2_SQRT_PI;

/// Error function: Maclaurin series below 2.5, continued fraction above.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return -erf(-x);
    }
    if x < 2.5 {
        erf_series(x)
    } else {
        1.0 - erfc_cf(x)
    }
}

pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 2.5 {
        1.0 - erf(x)
    } else {
        erfc_cf(x)
    }
}

fn erf_series(x: f64) -> f64 {
    // erf(x) = 2/√π Σ (-1)^n x^{2n+1} / (n! (2n+1))
    let x2 = x * x;
    let mut term = x;
    let mut s = CompensatedSum::new();
    let mut n = 0u32;
    loop {
        let contrib = term / f64::from(2 * n + 1);
        s.add(contrib);
        if libm::fabs(contrib) < 1e-17 * libm::fabs(s.value()) || n > 200 {
            break;
        }
        n += 1;
        term *= -x2 / f64::from(n);
    }
    FRAC_2_SQRT_PI * s.value()
}

fn erfc_cf(x: f64) -> f64 {
    if x == f64::INFINITY {
        return 0.0;
    }
    // erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    let mut t = x;
    for n in (1..=120).rev() {
        t = x + (f64::from(n) / 2.0) / t;
    }
    libm::exp(-x * x) / (libm::sqrt(PI) * t)
}

/// Standard normal measure of `[a, b]`.
pub fn gaussian_window(a: f64, b: f64) -> Result<f64> {
    if a.is_nan() || b.is_nan() {
        return Err(Error::Domain("window bounds must not be NaN"));
    }
    if a > b {
        return Err(Error::Domain("window needs a <= b"));
    }
    let s = core::f64::consts::SQRT_2;
    let v = if a >= 0.0 {
        0.5 * (erfc(a / s) - erfc(b / s))
    } else if b <= 0.0 {
        0.5 * (erfc(-b / s) - erfc(-a / s))
    } else {
        0.5 * (erf(b / s) - erf(a / s))
    };
    Ok(v)
}

/// Main terms of the averaged divisor sums for a constant weight `c ∈ (0,1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MainTerms {
    pub c: f64,
    pub f1_c: EulerConstant,
    pub gamma_c: f64,
}

impl MainTerms {
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::Domain("predictors need 0 < c < 1"));
        }
        Ok(MainTerms { c, f1_c: f1(c, DEFAULT_TRUNCATION)?, gamma_c: gamma_fn(c)? })
    }

    fn check_x(x: f64) -> Result<()> {
        if !(x >= 3.0) || !x.is_finite() {
            return Err(Error::Domain("predictors need x >= 3"));
        }
        Ok(())
    }

    /// `(6/π²) f1(c) / (c Γ(c)) · x log^c x`.
    pub fn s_full(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        let coeff = SQUAREFREE_DENSITY * self.f1_c.value / (self.c * self.gamma_c);
        Ok(coeff * x * libm::pow(libm::log(x), self.c))
    }

    /// [`s_full`](Self::s_full) divided by `k^c`.
    pub fn s_small(&self, x: f64, k: u32) -> Result<f64> {
        if k < 2 {
            return Err(Error::Config("k must be at least 2"));
        }
        Ok(self.s_full(x)? / libm::pow(f64::from(k), self.c))
    }
}

pub fn predict_s_full(x: f64, c: f64) -> Result<f64> {
    MainTerms::new(c)?.s_full(x)
}

pub fn predict_s_small(x: f64, k: u32, c: f64) -> Result<f64> {
    MainTerms::new(c)?.s_small(x, k)
}

/// The same main term reached through `Σ μ²(n)(1+c)^{ω(n)}`:
/// `f0(1+c) / Γ(1+c) · x log^c x`.
pub fn predict_s_full_via_f0(x: f64, c: f64) -> Result<f64> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain("predictors need 0 < c < 1"));
    }
    MainTerms::check_x(x)?;
    let f = f0(1.0 + c, DEFAULT_TRUNCATION)?;
    Ok(f.value / gamma_fn(1.0 + c)? * x * libm::pow(libm::log(x), c))
}

/// `Σ_{n≤x} z^{ω(n)} μ²(n)`, or with the extra factor `g(n)` when `weighted`.
///
/// The unweighted sum goes through exact ω-class counts; the weighted sum is
/// accumulated per `n` in ascending order.
pub fn selberg_exact(x: u64, z: f64, weighted: bool, t: &SieveTables) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain("selberg sums need z > 0"));
    }
    if x > t.limit() {
        return Err(Error::OutOfRange { value: x, limit: t.limit() });
    }
    if !weighted {
        let counts = t.omega_class_counts(x)?;
        return Ok(counts.iter().enumerate().map(|(j, &c)| c as f64 * powu(z, j as u32)).collect::<CompensatedSum>().value());
    }
    let mut s = CompensatedSum::new();
    for n in 1..=x {
        if t.is_squarefree(n) {
            let primes = t.factor(n);
            s.add(powu(z, primes.len() as u32) * g_on_primes(&primes));
        }
    }
    Ok(s.value())
}

/// `x log^{z-1} x / Γ(z) · f(z)`, where `constant` is f0(z) for the plain
/// sum and f1(z) for the `g`-weighted one.
pub fn selberg_predictor(x: f64, constant: &EulerConstant) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::Domain("selberg predictor needs x > 1"));
    }
    let z = constant.z;
    Ok(x * libm::pow(libm::log(x), z - 1.0) / gamma_fn(z)? * constant.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::build_sieve;

    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            let x = a + i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
        }
        s * h / 3.0
    }

    fn normal_pdf(x: f64) -> f64 {
        libm::exp(-0.5 * x * x) / libm::sqrt(2.0 * PI)
    }

    #[test]
    fn f0_at_one_is_inverse_zeta2() {
        let f = f0(1.0, DEFAULT_TRUNCATION).unwrap();
        assert!(f.tail_bound <= 1e-6);
        assert!((f.value - SQUAREFREE_DENSITY).abs() < f.tail_bound * f.value + 1e-12);
        assert!((f.value * ZETA_2 - 1.0).abs() < 1e-6);
        assert_eq!(f.truncation_prime, 999_983);
    }

    #[test]
    fn tiny_z_gives_one() {
        assert!((f0(1e-9, DEFAULT_TRUNCATION).unwrap().value - 1.0).abs() < 1e-6);
        assert!((f1(1e-9, DEFAULT_TRUNCATION).unwrap().value - 1.0).abs() < 1e-6);
    }

    #[test]
    fn tail_bound_budget() {
        for z in [0.1, 0.5, 1.0, 2.0, 3.0, 4.0] {
            assert!(f0(z, DEFAULT_TRUNCATION).unwrap().tail_bound <= 1e-6, "z={z}");
            assert!(f1(z, DEFAULT_TRUNCATION).unwrap().tail_bound <= 1e-6, "z={z}");
        }
    }

    #[test]
    fn tail_estimate_covers_observed_prime_tail() {
        // Σ_{10^6 < p ≤ 10^7} 1/p² must sit below the estimate used for P = 10^6.
        let observed: f64 = primes_up_to(10_000_000)
            .iter()
            .filter(|&&p| p > 1_000_000)
            .map(|&p| 1.0 / (p as f64 * p as f64))
            .sum();
        let estimate = tail_bound(Product::F0, 1.0, 1e6) / (1.0 + 2.0 / 1e6);
        assert!(observed < estimate);
        assert!(observed > 0.8 * estimate);
    }

    #[test]
    fn truncations_are_self_consistent() {
        let big = primes_up_to(10_000_000);
        let small_end = big.partition_point(|&p| p <= 1_000_000);
        for which in [Product::F0, Product::F1] {
            for z in [0.5, 1.0, 2.0, 4.0] {
                let a = euler_product_over(which, z, 1_000_000, &big[..small_end]).unwrap();
                let b = euler_product_over(which, z, 10_000_000, &big).unwrap();
                assert!((a.value - b.value).abs() < (a.tail_bound + b.tail_bound) * a.value.max(b.value));
            }
        }
    }

    #[test]
    fn f1_f0_identity() {
        for i in 1..=9 {
            let c = i as f64 / 10.0;
            let lhs = f1(c, DEFAULT_TRUNCATION).unwrap().value;
            let rhs = ZETA_2 * f0(1.0 + c, DEFAULT_TRUNCATION).unwrap().value;
            assert!((lhs - rhs).abs() < 1e-6, "c={c}");
        }
        let lhs = f1(1.0, DEFAULT_TRUNCATION).unwrap().value;
        assert!((lhs - ZETA_2 * f0(2.0, DEFAULT_TRUNCATION).unwrap().value).abs() < 1e-6);
    }

    #[test]
    fn euler_domain() {
        assert!(f0(0.0, 1000).is_err());
        assert!(f0(-1.0, 1000).is_err());
        assert!(f1(4.5, 1000).is_err());
        assert!(f0(1.0, 50).is_err());
    }

    #[test]
    fn gamma_values() {
        assert!((gamma_fn(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_fn(0.5).unwrap() - PI.sqrt()).abs() < 1e-9);
        assert!((gamma_fn(5.0).unwrap() / 24.0 - 1.0).abs() < 1e-9);
        // reference values to 16 digits
        for (z, g) in [
            (0.1, 9.513_507_698_668_731_8),
            (1.0 / 3.0, 2.678_938_534_707_747_6),
            (2.5, 1.329_340_388_179_137_0),
            (10.0, 362_880.0),
            (30.0, 8.841_761_993_739_701e30),
        ] {
            let got = gamma_fn(z).unwrap();
            assert!((got / g - 1.0).abs() <= 1e-10, "z={z} got={got}");
        }
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-2.0).is_err());
    }

    #[test]
    fn gamma_recurrence() {
        for i in 1..=30 {
            let z = i as f64 / 10.0;
            let r = gamma_fn(z + 1.0).unwrap() / (z * gamma_fn(z).unwrap());
            assert!((r - 1.0).abs() <= 1e-9, "z={z}");
        }
    }

    #[test]
    fn erf_reference_values() {
        for (x, e) in [
            (0.5, 0.520_499_877_813_046_5),
            (1.0, 0.842_700_792_949_714_9),
            (2.0, 0.995_322_265_018_952_7),
            (2.4999, 0.999_592_830_099_666_5),
        ] {
            assert!((erf(x) - e).abs() < 1e-14, "x={x}");
            assert!((erf(-x) + e).abs() < 1e-14);
        }
        assert!((erfc(2.5) / 4.069_520_174_449_59e-4 - 1.0).abs() < 1e-12);
        assert!((erfc(3.0) / 2.209_049_699_858_544e-5 - 1.0).abs() < 1e-12);
        assert!((erfc(6.0) / 2.151_973_671_249_891_3e-17 - 1.0).abs() < 1e-12);
        assert_eq!(erf(f64::INFINITY), 1.0);
    }

    #[test]
    fn gaussian_window_against_quadrature() {
        let full = gaussian_window(-10.0, 10.0).unwrap();
        assert!((full - 1.0).abs() < 1e-7);
        let one = gaussian_window(-1.0, 1.0).unwrap();
        let quad = simpson(normal_pdf, -1.0, 1.0, 2000);
        assert!((one - quad).abs() < 1e-7);
        assert!((one - 0.682_689_5).abs() < 1e-7);
        assert_eq!(gaussian_window(0.0, 0.0).unwrap(), 0.0);
        for (a, b) in [(-3.0, 0.5), (0.2, 4.0), (-6.0, -2.5), (1.7, 1.9)] {
            let quad = simpson(normal_pdf, a, b, 4000);
            assert!((gaussian_window(a, b).unwrap() - quad).abs() < 1e-7, "({a},{b})");
        }
        assert!(gaussian_window(1.0, 0.0).is_err());
        assert!((gaussian_window(f64::NEG_INFINITY, f64::INFINITY).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn predictor_shapes() {
        let terms = MainTerms::new(0.3).unwrap();
        for x in [10.0, 1e4, 1e7] {
            let full = terms.s_full(x).unwrap();
            let small = terms.s_small(x, 3).unwrap();
            assert!((small / full - libm::pow(3.0, -0.3)).abs() < 1e-15);
        }
        let norm = |x: f64| terms.s_full(x).unwrap() / (x * libm::pow(libm::log(x), 0.3));
        assert!((norm(1e3) / norm(1e9) - 1.0).abs() < 1e-14);
        for c in [0.1, 0.3, 0.5, 0.9] {
            let a = predict_s_full(1e6, c).unwrap();
            let b = predict_s_full_via_f0(1e6, c).unwrap();
            assert!((a / b - 1.0).abs() < 1e-6, "c={c}");
        }
        assert!(predict_s_full(1e6, 0.0).is_err());
        assert!(predict_s_full(1e6, 1.0).is_err());
        assert!(predict_s_full(2.0, 0.5).is_err());
    }

    #[test]
    fn selberg_examples() {
        let t = build_sieve(100).unwrap();
        assert_eq!(selberg_exact(10, 2.0, false, &t).unwrap(), 17.0);
        assert_eq!(selberg_exact(10, 1.0, false, &t).unwrap(), 7.0);
        // squarefree 1, 2, 3, 5, 6, 7, 10 with g(6) = (2/3)(3/4), g(10) = (2/3)(5/6)
        let expect = 1.0 + 2.0 / 3.0 + 3.0 / 4.0 + 5.0 / 6.0 + 0.5 + 7.0 / 8.0 + (2.0 / 3.0) * (5.0 / 6.0);
        assert!((selberg_exact(10, 1.0, true, &t).unwrap() - expect).abs() < 1e-14);
        assert!(selberg_exact(10, 0.0, true, &t).is_err());
    }
}
