//! Data-parallel helpers with a sequential fallback.
//!
//! The verify suites fan out large batches of independent exact checks
//! (index tuples, sampled elements). With the default `parallel` feature the
//! batch runs on the rayon thread pool; without it the same call runs
//! sequentially. Results are returned in input order either way, so callers
//! are deterministic regardless of the feature set.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, in parallel when the `parallel` feature is enabled.
pub fn map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Always-sequential map, kept callable under every feature set so the
/// bench suite can compare both execution paths in one binary.
pub fn map_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
