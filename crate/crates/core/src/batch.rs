//! Data-parallel helpers.
//!
//! With the `parallel` feature (on by default) work is spread over the rayon
//! thread pool; without it, or with [`Execution::Sequential`], everything runs
//! on the calling thread. Results are identical and in input order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;
use crate::instance::{Instance, Weight};
use crate::properties::PropertySet;
use crate::solve::{solve, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Applies `f` to every item, preserving order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// The first item (in input order) for which `f` returns `Some`.
pub fn find_first<T, R, F>(exec: Execution, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(&f).find_first(Option::is_some).flatten();
    }
    let _ = exec;
    items.iter().find_map(f)
}

/// Solves one property set on many instances.
pub fn solve_batch(
    exec: Execution,
    properties: PropertySet,
    instances: &[Instance],
    threshold: Option<Weight>,
    cap: usize,
) -> Vec<Result<Solution>> {
    map(exec, instances, |i| solve(properties, i, threshold, cap))
}
