use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A construction parameter is outside its accepted range.
    Config(&'static str),
    /// An integer argument lies outside the sieve tables.
    OutOfRange { value: u64, limit: u64 },
    NotSquarefree(u64),
    NotPrime(u64),
    /// A real argument outside the domain of the function.
    Domain(&'static str),
    /// Too many distinct primes for divisor enumeration.
    TooManyPrimes { omega: u32, max: u32 },
    Overflow(&'static str),
    /// Enumeration would exceed its work budget.
    Budget { needed: u64, budget: u64 },
    InsufficientPopulation { found: u64, requested: u64 },
    /// Grid too short, unsorted or otherwise unusable.
    Grid(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::OutOfRange { value, limit } => {
                write!(f, "{value} is outside the sieve range 1..={limit}")
            }
            Error::NotSquarefree(n) => write!(f, "{n} is not squarefree"),
            Error::NotPrime(n) => write!(f, "{n} is not prime"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::TooManyPrimes { omega, max } => {
                write!(f, "{omega} distinct primes exceeds the enumeration maximum {max}")
            }
            Error::Overflow(what) => write!(f, "overflow computing {what}"),
            Error::Budget { needed, budget } => {
                write!(f, "enumeration of {needed} states exceeds the budget of {budget}")
            }
            Error::InsufficientPopulation { found, requested } => {
                write!(f, "only {found} candidates available, {requested} requested")
            }
            Error::Grid(msg) => write!(f, "invalid grid: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
