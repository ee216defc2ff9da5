//! Value parsers for command-line numbers.

/// Parses a non-negative integer written plainly (`10000000`, `10_000_000`)
/// or in scientific form (`1e7`, `2.5e6`) when the value is integral.
pub fn parse_count(s: &str) -> Result<u64, String> {
    let t = s.trim().replace('_', "");
    if t.is_empty() {
        return Err("empty number".into());
    }
    if t.bytes().all(|b| b.is_ascii_digit()) {
        return t.parse().map_err(|e| format!("{s}: {e}"));
    }
    let v: f64 = t.parse().map_err(|_| format!("{s}: not a number"))?;
    if !v.is_finite() || v < 0.0 || v.fract() != 0.0 || v > 9_007_199_254_740_992.0 {
        return Err(format!("{s}: expected a non-negative integer"));
    }
    Ok(v as u64)
}

pub fn parse_u32(s: &str) -> Result<u32, String> {
    let v = parse_count(s)?;
    u32::try_from(v).map_err(|_| format!("{s}: too large"))
}

pub fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("{s}: not a number"))?;
    if v.is_nan() {
        return Err(format!("{s}: not a number"));
    }
    Ok(v)
}

/// `p=v`, an override of the weight at one prime.
pub fn parse_override(s: &str) -> Result<(u32, f64), String> {
    let (p, v) = s.split_once('=').ok_or_else(|| format!("{s}: expected p=v"))?;
    Ok((parse_u32(p)?, parse_real(v)?))
}

pub fn parse_threads(s: &str) -> Result<Threads, String> {
    if s.trim().eq_ignore_ascii_case("auto") {
        return Ok(Threads::Auto);
    }
    match parse_count(s)? {
        0 => Err("threads must be at least 1".into()),
        n => usize::try_from(n).map(Threads::Fixed).map_err(|_| format!("{s}: too large")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threads {
    Auto,
    Fixed(usize),
}

impl Threads {
    pub fn resolve(self) -> usize {
        match self {
            Threads::Auto => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            Threads::Fixed(n) => n,
        }
    }
}
