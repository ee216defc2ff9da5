//! Exact arithmetic for small-divisor sums over squarefree integers.
//!
//! Everything here is pure computation: the linear sieve, multiplicative
//! weights, divisor-sum aggregates kept as exact integer class counts,
//! Euler-product constants, the k-fold factorization census and the trend
//! experiments built on top of them. IO, threading and the command line live
//! in the `smalldiv` crate; parallel work is routed through [`Executor`].
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod census;
pub mod classes;
pub mod divisor_sums;
mod error;
pub mod euler;
mod exec;
pub mod experiments;
pub mod sieve;
pub mod sum;
pub mod weights;

pub use error::{Error, Result};
pub use exec::{chunk_ranges, Executor, Sequential, CHUNK};
