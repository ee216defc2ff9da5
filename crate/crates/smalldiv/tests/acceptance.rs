//! Acceptance criteria, one test each. Every test writes a single
//! `PASS`/`FAIL` line to stderr (uncaptured) before asserting.

use std::io::Write;
use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use smalldiv::RayonExecutor;
use smalldiv_core::census::{census, census_sample};
use smalldiv_core::divisor_sums::{abcd, full_classes, small_classes, FullMethod, SmallMethod};
use smalldiv_core::euler::{f0, f1, gamma_fn, DEFAULT_TRUNCATION, SQUAREFREE_DENSITY};
use smalldiv_core::experiments::{
    decomposition_holds, e_bound_scan, erdos_kac_histogram, gamma_lemma_check, monotonicity_scan, prop32_scan,
    ratio_convergence, selberg_trend, LemmaFunction, Verdict,
};
use smalldiv_core::sieve::{build_sieve, SieveTables};
use smalldiv_core::weights::{tau_k_squarefree, PrimeWeight};
use smalldiv_core::Sequential;

const LIMIT: u64 = 10_000_000;
const TREND_GRID: [u64; 4] = [10_000, 100_000, 1_000_000, 10_000_000];

fn tables() -> &'static SieveTables {
    static T: OnceLock<SieveTables> = OnceLock::new();
    T.get_or_init(|| build_sieve(LIMIT).expect("sieve"))
}

fn verdict_line(id: u32, name: &str, pass: bool, detail: &str, elapsed: Duration) {
    let status = if pass { "PASS" } else { "FAIL" };
    let line = format!("\nacceptance {id:>2} {status} {name}: {detail} [{:.2}s]\n", elapsed.as_secs_f64());
    let _ = std::io::stderr().write_all(line.as_bytes());
}

#[test]
fn criterion_01_oracle_equivalence() {
    let t = tables();
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for x in [1_000u64, 10_000, 100_000] {
        let nm = full_classes(x, &PrimeWeight::non_strict(0.0, 2).unwrap(), FullMethod::NMajor, t, &Sequential).unwrap();
        let dm = full_classes(x, &PrimeWeight::non_strict(0.0, 2).unwrap(), FullMethod::DMajor, t, &Sequential).unwrap();
        let oi = full_classes(x, &PrimeWeight::non_strict(0.0, 2).unwrap(), FullMethod::OmegaIdentity, t, &Sequential)
            .unwrap();
        for c in [0.0, 0.25, 0.5, 1.0] {
            let w = PrimeWeight::non_strict(c, 2).unwrap();
            if nm != dm || nm != oi || nm.evaluate(&w).unwrap() != oi.evaluate(&w).unwrap() {
                mismatches.push(format!("s_full x={x} c={c}"));
            }
            for k in [2u32, 3, 4] {
                let w = PrimeWeight::non_strict(c, k).unwrap();
                let a = small_classes(x, k, &w, SmallMethod::NMajor, t, &Sequential).unwrap();
                let b = small_classes(x, k, &w, SmallMethod::DMajor, t, &Sequential).unwrap();
                if a != b || a.evaluate(&w).unwrap() != b.evaluate(&w).unwrap() {
                    mismatches.push(format!("s_small x={x} k={k} c={c}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches.is_empty() && elapsed < Duration::from_secs(30);
    verdict_line(1, "oracle equivalence", pass, &format!("{} mismatches, budget 30s", mismatches.len()), elapsed);
    assert!(pass, "mismatches {mismatches:?} in {elapsed:?}");
}

#[test]
fn criterion_02_decomposition_identities() {
    let t = tables();
    let start = Instant::now();
    let mut failures = Vec::new();
    for x in [10_000u64, 1_000_000] {
        for c in [0.1, 0.3] {
            let w = PrimeWeight::new(c, 3).unwrap();
            let small = small_classes(x, 3, &w, SmallMethod::NMajor, t, &Sequential).unwrap();
            let full = full_classes(x, &w, FullMethod::NMajor, t, &Sequential).unwrap();
            for p in [2u64, 3, 5] {
                let parts = abcd(x, 3, &w, p, t, &Sequential).unwrap();
                if !decomposition_holds(&parts, &small, &full) {
                    failures.push(format!("x={x} c={c} p={p}"));
                }
            }
        }
    }
    let pass = failures.is_empty();
    verdict_line(2, "decomposition identities", pass, &format!("12 cases, failures {failures:?}"), start.elapsed());
    assert!(pass);
}

#[test]
fn criterion_03_euler_and_gamma() {
    let start = Instant::now();
    let mut worst: f64 = (f0(1.0, DEFAULT_TRUNCATION).unwrap().value - SQUAREFREE_DENSITY).abs();
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    for i in 1..=9 {
        let c = f64::from(i) / 10.0;
        let lhs = f1(c, DEFAULT_TRUNCATION).unwrap().value;
        let rhs = zeta2 * f0(1.0 + c, DEFAULT_TRUNCATION).unwrap().value;
        worst = worst.max((lhs - rhs).abs());
    }
    let g_half = (gamma_fn(0.5).unwrap() - std::f64::consts::PI.sqrt()).abs();
    let g_five = (gamma_fn(5.0).unwrap() - 24.0).abs() / 24.0;
    let pass = worst <= 1e-6 && g_half <= 1e-9 && g_five <= 1e-9;
    let detail = format!("max product error {worst:.3e} (tol 1e-6), gamma errors {g_half:.1e}, {g_five:.1e} (tol 1e-9)");
    verdict_line(3, "euler products and gamma", pass, &detail, start.elapsed());
    assert!(pass, "{detail}");
}

#[test]
fn criterion_04_coprime_count_constant() {
    let t = tables();
    let start = Instant::now();
    let report = prop32_scan(1_000, &[10_000, 100_000, 1_000_000], t, &Sequential).unwrap();
    let max = report.summary_value("max_constant").unwrap();
    let e = e_bound_scan(100_000, t, &Sequential).unwrap();
    let pass = report.verdict == Verdict::Pass && max <= 6.0 && e.violations.is_empty();
    let detail = format!(
        "max constant {max:.4} (bound 6), E bound violations {} of {} (max ratio {:.4})",
        e.violations.len(),
        e.checked,
        e.max_ratio
    );
    verdict_line(4, "coprime squarefree count constant", pass, &detail, start.elapsed());
    assert!(pass, "{detail}");
}

#[test]
fn criterion_05_ratio_trend() {
    let t = tables();
    let start = Instant::now();
    let report = ratio_convergence(3, 0.3, true, &TREND_GRID, t, &Sequential).unwrap();
    let elapsed = start.elapsed();
    let target = 3f64.powf(-0.3);
    let dev: Vec<f64> = report.observed.iter().map(|r| (r - target).abs()).collect();
    let trend = dev[2] <= dev[1] && dev[3] <= dev[2];
    let window = dev[3] <= 0.15 * target;
    let pass = trend && window && elapsed < Duration::from_secs(300);
    let detail = format!(
        "R {:?} vs {target:.6}; |R - target| {:?}; non-increasing over last three: {trend}; final in window: {window}",
        report.observed, dev
    );
    verdict_line(5, "ratio approaches k^-c", pass, &detail, elapsed);
    assert!(pass, "{detail}");
}

#[test]
fn criterion_06_monotone_in_one_prime() {
    let t = tables();
    let start = Instant::now();
    let grid = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5];
    let mut parts = Vec::new();
    let mut pass = true;
    for p in [2u64, 3, 5] {
        let r = monotonicity_scan(1_000_000, 3, 0.3, true, p, &grid, t, &Sequential).unwrap();
        let decreasing = r.observed.windows(2).all(|w| w[1] < w[0]);
        let adbc = r.summary_value("ad_minus_bc").unwrap();
        let err = r.summary_value("max_rel_err").unwrap();
        pass &= decreasing && adbc < 0.0 && err <= 1e-12 && r.verdict == Verdict::Pass;
        parts.push(format!("p={p} decreasing={decreasing} AD-BC={adbc:.4e} max_rel_err={err:.1e}"));
    }
    let detail = parts.join("; ");
    verdict_line(6, "ratio decreasing in h(p)", pass, &detail, start.elapsed());
    assert!(pass, "{detail}");
}

#[test]
fn criterion_07_census() {
    let t = tables();
    let start = Instant::now();
    let mut problems = Vec::new();
    for n in 2..=10_000u64 {
        if t.is_squarefree(n) {
            let r = census(n, 2, t).unwrap();
            if r.g_k != tau_k_squarefree(n, 2, t).unwrap() {
                problems.push(format!("g_2({n}) = {}", r.g_k));
            }
        }
    }
    let thirty = census(30, 3, t).unwrap();
    if thirty.g_k != 48 || thirty.tau_k != 27 {
        problems.push(format!("g_3(30) = {}, tau_3(30) = {}", thirty.g_k, thirty.tau_k));
    }
    for (k, omega, bound) in [(3u32, 8u32, 100_000_000u64), (4, 6, 10_000_000)] {
        let s = census_sample(omega, k, 50, 2024, bound, t, &Sequential).unwrap();
        if !s.trivial_bounds_hold() || s.records.len() != 50 {
            problems.push(format!("trivial bounds at k={k} omega={omega}"));
        }
    }
    let wide = census_sample(12, 3, 50, 2024, 100_000_000_000_000, t, &Sequential).unwrap();
    let pass = problems.is_empty();
    let detail = format!(
        "problems {problems:?}; omega=12 mean g_3/tau_3 = {:.4} vs 1.5 (reported only, population {})",
        wide.mean_ratio, wide.population
    );
    verdict_line(7, "census", pass, &detail, start.elapsed());
    assert!(pass, "{detail}");
}

#[test]
fn criterion_08_selberg_trend() {
    let t = tables();
    let start = Instant::now();
    let two = selberg_trend(2.0, false, &TREND_GRID, t).unwrap();
    let one = selberg_trend(1.0, false, &TREND_GRID, t).unwrap();
    let d: Vec<f64> = two.observed.iter().map(|v| (v - 1.0).abs()).collect();
    let drift = d[2] <= d[1] && d[3] <= d[2];
    let two_final = two.observed[3];
    let one_final = one.observed[3];
    let pass = drift && (0.8..=1.2).contains(&two_final) && (0.97..=1.03).contains(&one_final);
    let detail = format!("z=2 ratios {:?} (drift {drift}); z=1 final {one_final:.6}", two.observed);
    verdict_line(8, "selberg trend", pass, &detail, start.elapsed());
    assert!(pass, "{detail}");
}

#[test]
fn criterion_09_erdos_kac() {
    let t = tables();
    let start = Instant::now();
    let r = erdos_kac_histogram(LIMIT, -1.0, 1.0, t, &Sequential).unwrap();
    let fraction = r.observed[0];
    let pass = (fraction - 0.6827).abs() <= 0.15;
    let detail = format!("fraction {fraction:.6} vs 0.6827 +/- 0.15");
    verdict_line(9, "erdos-kac window", pass, &detail, start.elapsed());
    assert!(pass, "{detail}");
}

#[test]
fn criterion_10_gamma_lemma() {
    let t = tables();
    let start = Instant::now();
    let n = 1_000_000;
    let h = LemmaFunction::HInterpolated { p: 2, weight: PrimeWeight::new(0.3, 3).unwrap() };
    let mut parts = Vec::new();
    let mut pass = true;
    for (label, f) in [("log_shift", LemmaFunction::LogShift), ("h_interp", h)] {
        let r = gamma_lemma_check(n, &f, 50, t).unwrap();
        let decreasing = r.observed.windows(2).all(|w| w[1] < w[0]);
        let rises = r.observed.windows(2).filter(|w| w[1] >= w[0]).count();
        let asym = r.summary_value("max_asymmetry").unwrap();
        pass &= decreasing && asym <= 1e-12;
        parts.push(format!("{label}: decreasing={decreasing} ({rises} rises of 49) asymmetry={asym:.1e}"));
    }
    let detail = parts.join("; ");
    verdict_line(10, "gamma_N decreasing above sqrt(N)", pass, &detail, start.elapsed());
    assert!(pass, "{detail}");
}

fn run_binary(args: &[&str], threads: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_smalldiv"))
        .args(args)
        .args(["--threads", threads])
        .output()
        .expect("binary runs");
    assert!(out.status.success() || out.status.code() == Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

#[test]
fn criterion_11_determinism_across_threads() {
    let t = tables();
    let start = Instant::now();
    let one = RayonExecutor::new(1).unwrap();
    let four = RayonExecutor::new(4).unwrap();
    let mut differing: Vec<String> = Vec::new();

    let lib_checks: [(&str, Box<dyn Fn(&RayonExecutor) -> String>); 6] = [
        ("ratio_convergence", Box::new(|e| format!("{:?}", ratio_convergence(3, 0.3, true, &TREND_GRID, t, e).unwrap()))),
        (
            "monotonicity_scan",
            Box::new(|e| format!("{:?}", monotonicity_scan(1_000_000, 3, 0.3, true, 2, &[0.0, 0.25, 0.5], t, e).unwrap())),
        ),
        ("prop32_scan", Box::new(|e| format!("{:?}", prop32_scan(1_000, &[10_000, 1_000_000], t, e).unwrap()))),
        ("census_sample", Box::new(|e| format!("{:?}", census_sample(6, 4, 50, 2024, 10_000_000, t, e).unwrap()))),
        ("erdos_kac", Box::new(|e| format!("{:?}", erdos_kac_histogram(LIMIT, -1.0, 1.0, t, e).unwrap()))),
        (
            "full_classes",
            Box::new(|e| format!("{:?}", full_classes(100_000, &PrimeWeight::new(0.3, 3).unwrap(), FullMethod::OmegaIdentity, t, e).unwrap())),
        ),
    ];
    for (name, f) in &lib_checks {
        if f(&one) != f(&four) {
            differing.push((*name).to_string());
        }
    }

    let cli_runs: [&[&str]; 9] = [
        &["ratio", "--x-grid", "1e4,1e5,1e6,1e7", "--k", "3", "--c", "0.3"],
        &["monotone", "--x", "1e6", "--k", "3", "--c", "0.3", "--prime", "3"],
        &["adbc", "--x", "1e6", "--k", "3", "--c", "0.1", "--prime", "5"],
        &["prop32", "--m-max", "1000", "--x-grid", "1e4,1e5,1e6", "--e-max", "1e5"],
        &["census", "--omega", "8", "--k", "3", "--samples", "50", "--bound", "1e8", "--seed", "11"],
        &["selberg", "--z", "2", "--x-grid", "1e4,1e5,1e6,1e7"],
        &["erdos-kac", "--x", "1e7", "--format", "json"],
        &["gamma-lemma", "--n", "1e6", "--f", "h-interp"],
        &["euler", "--which", "f1", "--z", "0.5"],
    ];
    for args in cli_runs {
        if run_binary(args, "1") != run_binary(args, "4") {
            differing.push(args.join(" "));
        }
    }
    let pass = differing.is_empty();
    let detail = format!("{} library and {} CLI comparisons, differing {differing:?}", lib_checks.len(), cli_runs.len());
    verdict_line(11, "determinism across 1 and 4 threads", pass, &detail, start.elapsed());
    assert!(pass, "{detail}");
}
