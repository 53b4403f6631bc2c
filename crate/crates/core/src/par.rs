//! Index-partitioned execution of embarrassingly parallel sweeps.
//!
//! With the default `parallel` feature the sweeps fan out over rayon's
//! global pool; without it the same closure runs sequentially. Results are
//! always collected in index order, so reports are deterministic either way.

#[cfg(feature = "parallel")]
pub(crate) fn map_indices<T, F>(lo: usize, hi: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (lo..hi).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indices<T, F>(lo: usize, hi: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (lo..hi).map(f).collect()
}
