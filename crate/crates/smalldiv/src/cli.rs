use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use smalldiv_core::census::{census, census_sample};
use smalldiv_core::divisor_sums::{abcd, full_classes, ratio, small_classes, FullMethod, SmallMethod};
use smalldiv_core::euler::{euler_product, predict_s_full_via_f0, MainTerms, Product};
use smalldiv_core::experiments::{
    decomposition_holds, e_bound_scan, erdos_kac_histogram, gamma_lemma_check, monotonicity_scan, prop32_scan,
    ratio_convergence_for, selberg_trend, LemmaFunction, TrendReport, Verdict,
};
use smalldiv_core::sieve::{build_sieve, primes_up_to, SieveTables};
use smalldiv_core::weights::PrimeWeight;

use crate::config::{self, ConfigError};
use crate::exec::RayonExecutor;
use crate::numbers::{parse_count, parse_override, parse_real, parse_threads, parse_u32, Threads};
use crate::output::{Format, Table};

/// Small-divisor sums over squarefree integers: primitives and trend studies.
#[derive(Debug, Parser)]
#[command(name = "smalldiv", version, args_override_self = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// File of `key = value` lines supplying flag defaults.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Worker threads, or `auto`.
    #[arg(long, global = true, value_parser = parse_threads, default_value = "auto")]
    pub threads: Threads,
    #[arg(long, global = true, value_parser = parse_count, default_value = "0")]
    pub seed: u64,
    /// Exit with status 2 when the verdict is `fail`.
    #[arg(long, global = true)]
    pub check: bool,
    /// Allow weights at or above 1/(k-1).
    #[arg(long = "no-strict", global = true)]
    pub no_strict: bool,
    /// Sieve extent; defaults to the smallest extent the command needs.
    #[arg(long, global = true, value_parser = parse_count)]
    pub limit: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Squarefree counts per number of prime factors up to the limit.
    SieveStats,
    /// R = S_small / S_full at one x, or over an x grid with a trend verdict.
    Ratio(RatioArgs),
    /// R as the weight at one prime sweeps a grid.
    Monotone(MonotoneArgs),
    /// The A, B, C, D split of both sums by divisibility by a prime.
    Adbc(AdbcArgs),
    /// Truncated Euler products f0 and f1.
    Euler(EulerArgs),
    /// Main-term predictions for both sums.
    Predict(PredictArgs),
    /// Error constants of the coprime squarefree count.
    Prop32(Prop32Args),
    /// Small components in ordered k-fold factorizations.
    Census(CensusArgs),
    /// Normalized prime-factor counts against the normal distribution.
    ErdosKac(ErdosKacArgs),
    /// Shape of f(x) f(N/x) above sqrt(N).
    GammaLemma(GammaArgs),
    /// Exact sums of z^omega(n) over squarefree n against their main terms.
    Selberg(SelbergArgs),
}

#[derive(Debug, Args)]
pub struct RatioArgs {
    #[arg(long, value_parser = parse_count, required_unless_present = "x_grid")]
    pub x: Option<u64>,
    /// Comma-separated x values; at least four.
    #[arg(long, value_parser = parse_count, value_delimiter = ',', conflicts_with = "x")]
    pub x_grid: Vec<u64>,
    #[arg(long, value_parser = parse_u32)]
    pub k: u32,
    #[arg(long, value_parser = parse_real)]
    pub c: f64,
    /// `p=v` sets the weight at prime p; repeatable.
    #[arg(long = "override", value_parser = parse_override)]
    pub overrides: Vec<(u32, f64)>,
}

#[derive(Debug, Args)]
pub struct MonotoneArgs {
    #[arg(long, value_parser = parse_count)]
    pub x: u64,
    #[arg(long, value_parser = parse_u32)]
    pub k: u32,
    #[arg(long, value_parser = parse_real)]
    pub c: f64,
    #[arg(long, value_parser = parse_count)]
    pub prime: u64,
    #[arg(long, value_parser = parse_real, value_delimiter = ',', default_value = "0,0.1,0.2,0.3,0.4,0.5")]
    pub v_grid: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct AdbcArgs {
    #[arg(long, value_parser = parse_count)]
    pub x: u64,
    #[arg(long, value_parser = parse_u32)]
    pub k: u32,
    #[arg(long, value_parser = parse_real)]
    pub c: f64,
    #[arg(long, value_parser = parse_count)]
    pub prime: u64,
    #[arg(long = "override", value_parser = parse_override)]
    pub overrides: Vec<(u32, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    F0,
    F1,
}

#[derive(Debug, Args)]
pub struct EulerArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long, value_parser = parse_real)]
    pub z: f64,
    #[arg(long, value_parser = parse_count, default_value = "1e6")]
    pub trunc: u64,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long, value_parser = parse_count)]
    pub x: u64,
    #[arg(long, value_parser = parse_u32)]
    pub k: u32,
    #[arg(long, value_parser = parse_real)]
    pub c: f64,
}

#[derive(Debug, Args)]
pub struct Prop32Args {
    #[arg(long, value_parser = parse_count)]
    pub m_max: u64,
    #[arg(long, value_parser = parse_count, value_delimiter = ',', default_value = "1e4,1e5,1e6")]
    pub x_grid: Vec<u64>,
    /// Also check E(m) < 2 tau(m)^(2/3) for squarefree m up to this value.
    #[arg(long, value_parser = parse_count)]
    pub e_max: Option<u64>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["n", "omega"]))]
pub struct CensusArgs {
    /// A single squarefree n.
    #[arg(long, value_parser = parse_count)]
    pub n: Option<u64>,
    /// Sample squarefree n with this many prime factors.
    #[arg(long, value_parser = parse_u32)]
    pub omega: Option<u32>,
    #[arg(long, value_parser = parse_u32)]
    pub k: u32,
    #[arg(long, value_parser = parse_count, default_value = "50")]
    pub samples: u64,
    /// Upper end of the sampled population; defaults to the limit, or 1e7.
    #[arg(long, value_parser = parse_count)]
    pub bound: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ErdosKacArgs {
    #[arg(long, value_parser = parse_count)]
    pub x: u64,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true, default_value = "-1")]
    pub a: f64,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true, default_value = "1")]
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LemmaKind {
    /// log(e + x)
    LogShift,
    /// Interpolated partial sums H(x, h, p).
    HInterp,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[arg(long, value_parser = parse_count)]
    pub n: u64,
    #[arg(long, value_enum, default_value = "log-shift")]
    pub f: LemmaKind,
    #[arg(long, value_parser = parse_count, default_value = "2")]
    pub prime: u64,
    #[arg(long, value_parser = parse_real, default_value = "0.3")]
    pub c: f64,
    #[arg(long, value_parser = parse_u32, default_value = "3")]
    pub k: u32,
    #[arg(long, value_parser = parse_count, default_value = "50")]
    pub points: u64,
}

#[derive(Debug, Args)]
pub struct SelbergArgs {
    #[arg(long, value_parser = parse_real)]
    pub z: f64,
    /// Include the factor g(n).
    #[arg(long)]
    pub weighted: bool,
    #[arg(long, value_parser = parse_count, value_delimiter = ',', default_value = "1e4,1e5,1e6,1e7")]
    pub x_grid: Vec<u64>,
}

#[derive(Debug)]
pub enum AppError {
    Usage(String),
    Config(ConfigError),
    Compute(smalldiv_core::Error),
    Io(std::io::Error),
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Usage(m) => f.write_str(m),
            AppError::Config(e) => e.fmt(f),
            AppError::Compute(e) => e.fmt(f),
            AppError::Io(e) => write!(f, "io: {e}"),
        }
    }
}

impl std::error::Error for AppError {}

impl From<smalldiv_core::Error> for AppError {
    fn from(e: smalldiv_core::Error) -> Self {
        AppError::Compute(e)
    }
}

impl From<ConfigError> for AppError {
    fn from(e: ConfigError) -> Self {
        AppError::Config(e)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

/// Parses `args` (program name first), runs the command, writes its report
/// and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match with_config(&args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|t| emit(&cli.global, &t).map(|()| t)) {
        Ok(table) if cli.global.check && table.failed() => EXIT_CHECK_FAILED,
        Ok(_) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn with_config(args: &[OsString]) -> Result<Vec<OsString>, AppError> {
    let Some(path) = config::config_path(args) else {
        return Ok(args.to_vec());
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| ConfigError { line: 0, message: format!("{}: {e}", path.to_string_lossy()) })?;
    let entries = config::parse_config(&text)?;
    Ok(config::inject(args, &entries, &Cli::command())?)
}

fn emit(global: &GlobalOpts, table: &Table) -> Result<(), AppError> {
    let text = table.render(global.format);
    match &global.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

struct Env {
    tables: SieveTables,
    exec: RayonExecutor,
    strict: bool,
}

impl Env {
    /// Builds a sieve reaching at least `needed`, or exactly `--limit`.
    fn new(global: &GlobalOpts, needed: u64) -> Result<Self, AppError> {
        let limit = match global.limit {
            Some(l) if l < needed => {
                return Err(AppError::Usage(format!("this run needs --limit >= {needed}, got {l}")));
            }
            Some(l) => l,
            None => needed.max(2),
        };
        let exec = RayonExecutor::new(global.threads.resolve()).map_err(|e| AppError::Usage(e.to_string()))?;
        Ok(Env { tables: build_sieve(limit)?, exec, strict: !global.no_strict })
    }
}

fn check_k(k: u32) -> Result<(), AppError> {
    if k < 2 {
        return Err(AppError::Usage(format!("--k must be at least 2, got {k}")));
    }
    Ok(())
}

fn weight(c: f64, k: u32, strict: bool, overrides: &[(u32, f64)], t: &SieveTables) -> Result<PrimeWeight, AppError> {
    let mut w = PrimeWeight::with_mode(c, k, strict)?;
    for &(p, v) in overrides {
        w = w.with_override(p, v)?;
    }
    w.validate(t)?;
    Ok(w)
}

fn overrides_text(overrides: &[(u32, f64)]) -> String {
    overrides.iter().map(|(p, v)| format!("{p}={v:?}")).collect::<Vec<_>>().join(";")
}

fn grid_text(grid: &[u64]) -> String {
    grid.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

fn column<'a>(r: &'a TrendReport, name: &str) -> &'a [f64] {
    r.column_values(name).unwrap_or_else(|| panic!("report {} lacks column {name}", r.name))
}

fn adopt(table: &mut Table, report: &TrendReport) {
    for &(k, v) in &report.summary {
        table.summarize(k, v);
    }
    table.notes.extend(report.notes.iter().cloned());
    table.verdict = Some(report.verdict);
}

pub fn execute(cli: &Cli) -> Result<Table, AppError> {
    let g = &cli.global;
    match &cli.command {
        Command::SieveStats => sieve_stats(g),
        Command::Ratio(a) => ratio_cmd(g, a),
        Command::Monotone(a) => monotone_cmd(g, a),
        Command::Adbc(a) => adbc_cmd(g, a),
        Command::Euler(a) => euler_cmd(a),
        Command::Predict(a) => predict_cmd(a),
        Command::Prop32(a) => prop32_cmd(g, a),
        Command::Census(a) => census_cmd(g, a),
        Command::ErdosKac(a) => erdos_kac_cmd(g, a),
        Command::GammaLemma(a) => gamma_cmd(g, a),
        Command::Selberg(a) => selberg_cmd(g, a),
    }
}

fn sieve_stats(g: &GlobalOpts) -> Result<Table, AppError> {
    let env = Env::new(g, g.limit.unwrap_or(1_000_000))?;
    let t = &env.tables;
    let counts = t.omega_class_counts(t.limit())?;
    let mut table = Table::new("sieve-stats", &["omega", "count"]);
    table.input("limit", t.limit());
    for (omega, &count) in counts.iter().enumerate() {
        table.row(vec![(omega as u64).into(), count.into()]);
    }
    table.summarize("squarefree", counts.iter().sum::<u64>());
    table.summarize("primes", t.primes().len() as u64);
    Ok(table)
}

fn ratio_cmd(g: &GlobalOpts, a: &RatioArgs) -> Result<Table, AppError> {
    check_k(a.k)?;
    let grid: Vec<u64> = match a.x {
        Some(x) => vec![x],
        None => a.x_grid.clone(),
    };
    let needed = grid.iter().copied().max().unwrap_or(1);
    let env = Env::new(g, needed)?;
    let w = weight(a.c, a.k, env.strict, &a.overrides, &env.tables)?;
    let mut table = Table::new("ratio", &["x", "k", "c", "s_full", "s_small", "ratio", "k_pow_neg_c"]);
    table.input("k", a.k).input("c", a.c).input("overrides", overrides_text(&a.overrides));
    table.input("strict", env.strict).input("limit", env.tables.limit());
    let limit = (f64::from(a.k)).powf(-a.c);
    if let Some(x) = a.x {
        if x == 0 {
            return Err(AppError::Usage("--x must be at least 1".into()));
        }
        let r = ratio(x, a.k, &w, &env.tables, &env.exec)?;
        table.row(vec![x.into(), a.k.into(), a.c.into(), r.s_full.into(), r.s_small.into(), r.ratio.into(), limit.into()]);
        table.summarize("implied_constant", r.implied_constant());
        return Ok(table);
    }
    table.input("x_grid", grid_text(&grid));
    let report = ratio_convergence_for(a.k, &w, &grid, &env.tables, &env.exec)?;
    let (full, small) = (column(&report, "s_full"), column(&report, "s_small"));
    for (i, &x) in grid.iter().enumerate() {
        table.row(vec![
            x.into(),
            a.k.into(),
            a.c.into(),
            full[i].into(),
            small[i].into(),
            report.observed[i].into(),
            limit.into(),
        ]);
    }
    adopt(&mut table, &report);
    Ok(table)
}

fn monotone_cmd(g: &GlobalOpts, a: &MonotoneArgs) -> Result<Table, AppError> {
    check_k(a.k)?;
    let env = Env::new(g, a.x.max(a.prime))?;
    let report = monotonicity_scan(a.x, a.k, a.c, env.strict, a.prime, &a.v_grid, &env.tables, &env.exec)?;
    let mut table = Table::new("monotone", &["h_p", "ratio", "predicted", "rel_err"]);
    table.input("x", a.x).input("k", a.k).input("c", a.c).input("prime", a.prime);
    table.input("strict", env.strict).input("limit", env.tables.limit());
    let (pred, err) = (column(&report, "predicted"), column(&report, "rel_err"));
    for i in 0..report.grid.len() {
        table.row(vec![report.grid[i].into(), report.observed[i].into(), pred[i].into(), err[i].into()]);
    }
    adopt(&mut table, &report);
    Ok(table)
}

fn adbc_cmd(g: &GlobalOpts, a: &AdbcArgs) -> Result<Table, AppError> {
    check_k(a.k)?;
    let env = Env::new(g, a.x.max(a.prime))?;
    let (t, exec) = (&env.tables, &env.exec);
    let w = weight(a.c, a.k, env.strict, &a.overrides, t)?;
    let parts = abcd(a.x, a.k, &w, a.prime, t, exec)?;
    let small = small_classes(a.x, a.k, &w, SmallMethod::NMajor, t, exec)?;
    let full = full_classes(a.x, &w, FullMethod::NMajor, t, exec)?;
    let (s_small, s_full) = (small.evaluate(&w)?, full.evaluate(&w)?);
    let hp = w.at_prime(parts.p);
    let res_small = hp * parts.a + parts.b - s_small;
    let res_full = hp * parts.c + parts.d - s_full;
    let mut table = Table::new(
        "adbc",
        &["A", "B", "C", "D", "ad_minus_bc", "identity_residual_small", "identity_residual_full"],
    );
    table.input("x", a.x).input("k", a.k).input("c", a.c).input("prime", a.prime);
    table.input("overrides", overrides_text(&a.overrides)).input("strict", env.strict).input("limit", t.limit());
    table.row(vec![
        parts.a.into(),
        parts.b.into(),
        parts.c.into(),
        parts.d.into(),
        parts.ad_minus_bc().into(),
        res_small.into(),
        res_full.into(),
    ]);
    let exact = decomposition_holds(&parts, &small, &full);
    table.summarize("h_p", hp).summarize("s_small", s_small).summarize("s_full", s_full);
    table.summarize("class_identity_exact", exact);
    table.notes.push("verdict is the exact class-count identity; residuals are the floating-point differences".into());
    table.verdict = Some(if exact { Verdict::Pass } else { Verdict::Fail });
    Ok(table)
}

fn euler_cmd(a: &EulerArgs) -> Result<Table, AppError> {
    let which = match a.which {
        Which::F0 => Product::F0,
        Which::F1 => Product::F1,
    };
    let e = euler_product(which, a.z, a.trunc)?;
    let mut table = Table::new("euler", &["which", "z", "value", "trunc", "tail_bound"]);
    table.row(vec![which.name().into(), a.z.into(), e.value.into(), a.trunc.into(), e.tail_bound.into()]);
    table.summarize("truncation_prime", e.truncation_prime);
    Ok(table)
}

fn predict_cmd(a: &PredictArgs) -> Result<Table, AppError> {
    check_k(a.k)?;
    let m = MainTerms::new(a.c)?;
    let x = a.x as f64;
    let (full, small) = (m.s_full(x)?, m.s_small(x, a.k)?);
    let mut table = Table::new("predict", &["x", "k", "c", "s_full_main", "s_small_main", "ratio", "s_full_via_f0"]);
    table.row(vec![
        a.x.into(),
        a.k.into(),
        a.c.into(),
        full.into(),
        small.into(),
        (small / full).into(),
        predict_s_full_via_f0(x, a.c)?.into(),
    ]);
    table.summarize("f1_c", m.f1_c.value).summarize("gamma_c", m.gamma_c);
    Ok(table)
}

fn prop32_cmd(g: &GlobalOpts, a: &Prop32Args) -> Result<Table, AppError> {
    let top = a.x_grid.iter().copied().max().unwrap_or(1);
    let env = Env::new(g, top.max(a.m_max).max(a.e_max.unwrap_or(0)))?;
    let report = prop32_scan(a.m_max, &a.x_grid, &env.tables, &env.exec)?;
    let mut table = Table::new("prop32", &["x", "max_constant", "argmax_m"]);
    table.input("m_max", a.m_max).input("x_grid", grid_text(&a.x_grid)).input("limit", env.tables.limit());
    let argmax = column(&report, "argmax_m");
    for i in 0..report.grid.len() {
        table.row(vec![(report.grid[i] as u64).into(), report.observed[i].into(), (argmax[i] as u64).into()]);
    }
    adopt(&mut table, &report);
    if let Some(e_max) = a.e_max {
        let scan = e_bound_scan(e_max, &env.tables, &env.exec)?;
        table.input("e_max", e_max);
        table.summarize("e_checked", scan.checked).summarize("e_violations", scan.violations.len() as u64);
        table.summarize("e_max_ratio", scan.max_ratio).summarize("e_argmax", scan.argmax);
        table.notes.push("E bound: E(m) < 2 tau(m)^(2/3) for every checked squarefree m".into());
        if !scan.violations.is_empty() {
            table.verdict = Some(Verdict::Fail);
        }
    }
    Ok(table)
}

/// Smallest sieve holding every prime factor of a squarefree `n <= bound`
/// with `omega` prime factors.
fn population_limit(omega: u32, bound: u64) -> u64 {
    let small: u64 = primes_up_to(100).iter().take(omega.saturating_sub(1) as usize).map(|&p| u64::from(p)).product();
    (bound / small.max(1)).max(2)
}

fn census_cmd(g: &GlobalOpts, a: &CensusArgs) -> Result<Table, AppError> {
    check_k(a.k)?;
    let mut table = Table::new("census", &["n", "k", "omega", "tau_k", "g_k", "ratio"]);
    let push = |table: &mut Table, r: &smalldiv_core::census::CensusRecord| {
        table.row(vec![r.n.into(), r.k.into(), r.omega.into(), r.tau_k.into(), r.g_k.into(), r.ratio.into()]);
    };
    if let Some(n) = a.n {
        let env = Env::new(g, n)?;
        let r = census(n, a.k, &env.tables)?;
        table.input("n", n).input("k", a.k).input("limit", env.tables.limit());
        push(&mut table, &r);
        table.summarize("half_k", f64::from(a.k) / 2.0);
        table.verdict = Some(if r.within_trivial_bounds() { Verdict::Pass } else { Verdict::Fail });
        table.notes.push("verdict: tau_k <= g_k <= (k-1) tau_k".into());
        return Ok(table);
    }
    let omega = a.omega.expect("clap requires --n or --omega");
    if omega as usize > smalldiv_core::census::MAX_CENSUS_OMEGA {
        return Err(AppError::Usage(format!("--omega must be at most {}", smalldiv_core::census::MAX_CENSUS_OMEGA)));
    }
    let bound = a.bound.or(g.limit).unwrap_or(10_000_000);
    let env = Env::new(g, population_limit(omega, bound))?;
    let count = usize::try_from(a.samples).map_err(|_| AppError::Usage("--samples too large".into()))?;
    let s = census_sample(omega, a.k, count, g.seed, bound, &env.tables, &env.exec)?;
    table.input("omega", omega).input("k", a.k).input("samples", a.samples).input("seed", g.seed);
    table.input("bound", bound).input("limit", env.tables.limit());
    for r in &s.records {
        push(&mut table, r);
    }
    table.summarize("population", s.population);
    table.summarize("mean_ratio", s.mean_ratio).summarize("min_ratio", s.min_ratio).summarize("max_ratio", s.max_ratio);
    table.summarize("half_k", s.half_k()).summarize("mean_minus_half_k", s.mean_ratio - s.half_k());
    table.notes.push("verdict: tau_k <= g_k <= (k-1) tau_k on every sample; the mean against k/2 is informational".into());
    table.verdict = Some(if s.trivial_bounds_hold() { Verdict::Pass } else { Verdict::Fail });
    Ok(table)
}

fn erdos_kac_cmd(g: &GlobalOpts, a: &ErdosKacArgs) -> Result<Table, AppError> {
    let env = Env::new(g, a.x)?;
    let report = erdos_kac_histogram(a.x, a.a, a.b, &env.tables, &env.exec)?;
    let mut table = Table::new("erdos-kac", &["x", "a", "b", "inside", "total", "fraction", "phi", "abs_diff"]);
    table.input("limit", env.tables.limit());
    table.row(vec![
        a.x.into(),
        a.a.into(),
        a.b.into(),
        (column(&report, "inside")[0] as u64).into(),
        (column(&report, "total")[0] as u64).into(),
        report.observed[0].into(),
        column(&report, "phi")[0].into(),
        column(&report, "abs_diff")[0].into(),
    ]);
    adopt(&mut table, &report);
    Ok(table)
}

fn gamma_cmd(g: &GlobalOpts, a: &GammaArgs) -> Result<Table, AppError> {
    let points = usize::try_from(a.points).map_err(|_| AppError::Usage("--points too large".into()))?;
    let mut table = Table::new("gamma-lemma", &["x", "n_over_x", "gamma", "gamma_mirror"]);
    table.input("n", a.n).input("points", a.points);
    let (env, f) = match a.f {
        LemmaKind::LogShift => {
            table.input("f", "log-shift");
            (Env::new(g, 2)?, LemmaFunction::LogShift)
        }
        LemmaKind::HInterp => {
            check_k(a.k)?;
            let env = Env::new(g, a.n.saturating_add(1).max(a.prime))?;
            let weight = weight(a.c, a.k, env.strict, &[], &env.tables)?;
            table.input("f", "h-interp").input("prime", a.prime).input("c", a.c).input("k", a.k);
            table.input("strict", env.strict).input("limit", env.tables.limit());
            (env, LemmaFunction::HInterpolated { p: a.prime, weight })
        }
    };
    let report = gamma_lemma_check(a.n, &f, points, &env.tables)?;
    let mirror = column(&report, "gamma_mirror");
    for i in 0..report.grid.len() {
        let x = report.grid[i];
        table.row(vec![x.into(), (a.n as f64 / x).into(), report.observed[i].into(), mirror[i].into()]);
    }
    adopt(&mut table, &report);
    Ok(table)
}

fn selberg_cmd(g: &GlobalOpts, a: &SelbergArgs) -> Result<Table, AppError> {
    let env = Env::new(g, a.x_grid.iter().copied().max().unwrap_or(3))?;
    let report = selberg_trend(a.z, a.weighted, &a.x_grid, &env.tables)?;
    let mut table = Table::new("selberg", &["x", "exact", "predictor", "ratio"]);
    table.input("z", a.z).input("weighted", a.weighted).input("x_grid", grid_text(&a.x_grid));
    table.input("limit", env.tables.limit());
    let (exact, pred) = (column(&report, "exact"), column(&report, "predictor"));
    for i in 0..report.grid.len() {
        table.row(vec![(report.grid[i] as u64).into(), exact[i].into(), pred[i].into(), report.observed[i].into()]);
    }
    adopt(&mut table, &report);
    Ok(table)
}
