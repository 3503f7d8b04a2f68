//! Serial or rayon-backed execution of index-range scans.
//!
//! Every scan reduces to the minimum of a totally ordered key, so both
//! strategies return identical results.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Serial,
    /// Uses the global rayon pool. Falls back to serial when the crate is
    /// built without the `parallel` feature.
    Parallel,
}

impl Execution {
    pub fn from_threads(threads: usize) -> Self {
        if threads > 1 {
            Execution::Parallel
        } else {
            Execution::Serial
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Minimum of `f(i)` over `range`, skipping `None`.
pub fn min_over<K, F>(exec: Execution, range: Range<usize>, f: F) -> Option<K>
where
    K: Ord + Send,
    F: Fn(usize) -> Option<K> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().filter_map(f).min();
    }
    let _ = exec;
    range.filter_map(f).min()
}

/// `f(i)` for every index, in index order.
pub fn map_range<T, F>(exec: Execution, range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

/// Runs `f` inside a rayon pool of the given size when parallel execution is
/// requested; otherwise calls it directly.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    if threads > 1 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            return pool.install(f);
        }
    }
    let _ = threads;
    f()
}
