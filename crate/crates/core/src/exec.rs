//! Batch evaluation that is data-parallel when the `parallel` feature is on
//! and the caller asked for it, and plain iteration otherwise. Results come
//! back in input order either way, so verdicts and witness choices never
//! depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map_collect<T, U, F>(items: Vec<T>, parallel: bool, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.into_par_iter().map(f).collect();
    }
    let _ = parallel;
    items.into_iter().map(f).collect()
}
