//! Data-parallel execution with a sequential fallback.
//!
//! Work items are independent (one fit per journal, one experiment per seed),
//! and results always come back in input order, so the choice of execution
//! never changes an output byte.

use crate::numerics::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon worker pool; `jobs = 0` means the global pool.
    #[default]
    Parallel,
}

impl Execution {
    /// Whether parallel requests actually run in parallel in this build.
    pub const fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => items.iter().map(f).collect(),
            Execution::Parallel => par_map(items, f),
        }
    }

    /// Like [`Execution::map`] but inside a pool with at most `jobs` workers.
    pub fn map_with_jobs<T, R, F>(self, items: &[T], jobs: usize, f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        if jobs == 1 {
            return Execution::Sequential.map(items, f);
        }
        match self {
            Execution::Sequential => Execution::Sequential.map(items, f),
            Execution::Parallel => with_jobs(jobs, || par_map(items, &f)),
        }
    }

    /// Compensated sum of `f(i)` over `0..n`.
    ///
    /// Chunk boundaries are fixed and partial sums combine in chunk order, so
    /// both modes return the same bits.
    pub fn chunked_sum<F>(self, n: usize, chunk: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        let chunk = chunk.max(1);
        let starts: Vec<usize> = (0..n).step_by(chunk).collect();
        let partials = self.map(&starts, |&s| {
            let mut acc = CompensatedSum::default();
            for i in s..(s + chunk).min(n) {
                acc.add(f(i));
            }
            acc.value()
        });
        let mut total = CompensatedSum::default();
        for p in partials {
            total.add(p);
        }
        total.value()
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Runs `op` with parallel work confined to `jobs` threads (0 = global pool).
#[cfg(feature = "parallel")]
pub fn with_jobs<R: Send>(jobs: usize, op: impl FnOnce() -> R + Send) -> R {
    if jobs == 0 {
        return op();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(op),
        Err(_) => op(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_jobs<R: Send>(_jobs: usize, op: impl FnOnce() -> R + Send) -> R {
    op()
}
