/// How per-index work is scheduled.
///
/// `Parallel` silently degrades to sequential iteration when the crate is
/// built without the `parallel` feature, so callers never need to cfg-gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Maps `f` over `lo..=hi`, returning results in index order.
    pub(crate) fn map_range<T, F>(self, lo: usize, hi: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        if lo > hi {
            return Vec::new();
        }
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                (lo..=hi).into_par_iter().map(f).collect()
            }
            _ => (lo..=hi).map(f).collect(),
        }
    }
}
