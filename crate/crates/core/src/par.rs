//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on the
//! rayon pool; without it every helper runs sequentially. All helpers return
//! results in input order, so outputs never depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a batch of independent checks is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this build can actually run in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    #[cfg(feature = "parallel")]
    fn is_parallel(self) -> bool {
        self == Exec::Parallel
    }
}

/// First (in input order) item for which `f` returns `Some`.
pub fn find_map_first<I, R, F>(exec: Exec, items: Vec<I>, f: F) -> Option<R>
where
    I: Send,
    R: Send,
    F: Fn(I) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.into_par_iter().find_map_first(f);
    }
    let _ = exec;
    items.into_iter().find_map(f)
}

/// Applies `f` to every item, preserving order.
pub fn map<I, R, F>(exec: Exec, items: Vec<I>, f: F) -> Vec<R>
where
    I: Send,
    R: Send,
    F: Fn(I) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.into_par_iter().map(f).collect();
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}

/// True iff `f` holds for every item.
pub fn all<I, F>(exec: Exec, items: Vec<I>, f: F) -> bool
where
    I: Send,
    F: Fn(I) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.into_par_iter().all(f);
    }
    let _ = exec;
    items.into_iter().all(f)
}
