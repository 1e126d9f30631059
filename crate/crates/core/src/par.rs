//! Execution strategy for the data-parallel inner loops.
//!
//! With the `parallel` feature (on by default) the heavy loops run on the
//! rayon pool; without it every strategy degrades to the sequential path.
//! Both paths produce identical results.

/// How an operation should run its inner loop.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    /// Parallel for large inputs when the feature is enabled.
    #[default]
    Auto,
    Sequential,
    /// Always parallel; sequential when the feature is disabled.
    Parallel,
}

/// Work items below which `Auto` stays sequential.
pub(crate) const PARALLEL_THRESHOLD: usize = 1 << 14;

impl Execution {
    pub(crate) fn parallel_for(self, work: usize) -> bool {
        if !cfg!(feature = "parallel") {
            return false;
        }
        match self {
            Execution::Auto => work >= PARALLEL_THRESHOLD,
            Execution::Sequential => false,
            Execution::Parallel => true,
        }
    }
}

/// Maps `f` over `items`, in parallel when asked to, preserving order.
pub(crate) fn map_collect<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    // items are coarse-grained here, so Auto goes parallel as soon as there are two
    #[cfg(feature = "parallel")]
    if items.len() > 1 && exec != Execution::Sequential {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Splits `0..len` into roughly one chunk per worker.
pub(crate) fn chunk_size(len: usize) -> usize {
    #[cfg(feature = "parallel")]
    let workers = rayon::current_num_threads().max(1);
    #[cfg(not(feature = "parallel"))]
    let workers = 1;
    len.div_ceil(workers * 4).max(1)
}
