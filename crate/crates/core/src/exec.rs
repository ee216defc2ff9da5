use alloc::vec::Vec;
use core::ops::Range;

/// Fixed chunk width for partitioned loops over integer ranges.
///
/// Partitions never depend on the thread count, and partial results are
/// merged in chunk order, so every aggregate is reproducible bit for bit.
pub const CHUNK: u64 = 1 << 15;

/// Runs independent jobs `0..jobs` and returns their results in job order.
pub trait Executor: Sync {
    fn run<T, F>(&self, jobs: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;

    /// Maps over `range` split into [`CHUNK`]-wide pieces.
    fn map_chunks<T, F>(&self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(Range<u64>) -> T + Sync + Send,
    {
        let chunks = chunk_ranges(range, CHUNK);
        self.run(chunks.len(), |i| f(chunks[i].clone()))
    }
}

/// Single-threaded executor.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn run<T, F>(&self, jobs: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..jobs).map(f).collect()
    }
}

pub fn chunk_ranges(range: Range<u64>, width: u64) -> Vec<Range<u64>> {
    assert!(width > 0);
    let mut out = Vec::new();
    let mut lo = range.start;
    while lo < range.end {
        let hi = lo.saturating_add(width).min(range.end);
        out.push(lo..hi);
        lo = hi;
    }
    out
}
