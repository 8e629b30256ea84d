//! Exhaustive combinatorial ground truth: cycle peaks of permutations and
//! the tree-matching statistics of increasing trees.

mod census;
mod perm;
mod tree;

pub use census::{
    phi_sweep, theta_index_for_gamma, theta_triangle, tree_census, PhiSweep, TreeCensus,
};
pub use perm::{p_bruteforce, Perm};
pub use tree::{
    pair_classes, phi_apply, phi_compose, phi_orbit_check, tree_enumerate, tree_matching,
    tree_singletons, tree_stats, IncreasingTree, OrbitCheck, PairClass, TreeIter, TreeMatching,
    TreeStats,
};

use crate::error::{Error, Result};

/// Largest `n` enumerated unless raised explicitly.
pub const DEFAULT_CAP: usize = 9;
/// Caps above this are allowed but slow.
pub const WARN_ABOVE: usize = 10;

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// Number of worker threads to use when none is requested.
pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Runs `f` over `items` on up to `jobs` scoped threads, returning results
/// in item order.
pub(crate) fn split_work<T, R, F>(items: impl IntoIterator<Item = T>, jobs: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync,
{
    let items: Vec<T> = items.into_iter().collect();
    let jobs = jobs.clamp(1, items.len().max(1));
    if jobs == 1 {
        return items.into_iter().map(f).collect();
    }
    let mut buckets: Vec<Vec<(usize, T)>> = (0..jobs).map(|_| Vec::new()).collect();
    for (k, item) in items.into_iter().enumerate() {
        buckets[k % jobs].push((k, item));
    }
    let f = &f;
    let mut done: Vec<(usize, R)> = std::thread::scope(|scope| {
        let handles: Vec<_> = buckets
            .into_iter()
            .map(|bucket| scope.spawn(move || bucket.into_iter().map(|(k, t)| (k, f(t))).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    done.sort_by_key(|(k, _)| *k);
    done.into_iter().map(|(_, r)| r).collect()
}
