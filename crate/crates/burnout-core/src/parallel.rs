//! Replica-level data parallelism.
//!
//! Monte Carlo work in this crate is embarrassingly parallel across replicas.
//! With the `parallel` feature (default) replicas run on the rayon pool;
//! without it everything degrades to the sequential path. Results never
//! depend on the worker count because randomness is keyed by replica index.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution mode for replica maps. `Parallel` is a no-op without the
/// `parallel` feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Parallel,
    Serial,
}

/// Applies `f` to every replica index in `0..count`, in index order.
pub fn map_replicas<T, F>(mode: Parallelism, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match mode {
        Parallelism::Serial => map_replicas_serial(count, f),
        Parallelism::Parallel => {
            #[cfg(feature = "parallel")]
            {
                (0..count).into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                map_replicas_serial(count, f)
            }
        }
    }
}

/// Sequential fallback, always available.
pub fn map_replicas_serial<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..count).map(f).collect()
}

/// Sizes the global rayon pool; ignored when the pool is already running or
/// the `parallel` feature is off. `0` keeps the library default.
pub fn configure_workers(workers: usize) {
    #[cfg(feature = "parallel")]
    {
        if workers > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build_global();
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_serial() {
        let f = |i: usize| (i * i) as u64;
        assert_eq!(
            map_replicas(Parallelism::Parallel, 100, f),
            map_replicas_serial(100, f)
        );
    }
}
