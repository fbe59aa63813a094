//! Execution policy for the data-parallel sweeps.
//!
//! Results are always collected in input order, so output does not depend on
//! the worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Smallest run of items handed to one task; keeps splitting overhead below
/// the cost of a surface evaluation.
#[cfg(feature = "parallel")]
const MIN_CHUNK: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Sequential,
    /// `workers == 0` uses the global rayon pool.
    Parallel { workers: usize },
}

impl Exec {
    /// Parallel when the `parallel` feature is enabled, else sequential.
    pub fn auto() -> Exec {
        if cfg!(feature = "parallel") {
            Exec::Parallel { workers: 0 }
        } else {
            Exec::Sequential
        }
    }

    pub fn with_workers(workers: usize) -> Exec {
        if workers == 1 || !cfg!(feature = "parallel") {
            Exec::Sequential
        } else {
            Exec::Parallel { workers }
        }
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match *self {
            Exec::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel { workers } => {
                let run = || items.par_iter().with_min_len(MIN_CHUNK).map(&f).collect();
                if workers == 0 {
                    run()
                } else {
                    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
                        Ok(pool) => pool.install(run),
                        Err(_) => items.iter().map(&f).collect(),
                    }
                }
            }
            #[cfg(not(feature = "parallel"))]
            Exec::Parallel { .. } => items.iter().map(f).collect(),
        }
    }

    /// Maps `f` over `0..n`, preserving order.
    pub fn map_range<R, F>(&self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        let idx: Vec<usize> = (0..n).collect();
        self.map(&idx, |&i| f(i))
    }
}
