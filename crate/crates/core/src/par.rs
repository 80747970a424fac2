//! Order-preserving data-parallel helpers.
//!
//! Every sweep in the crate goes through these functions. With the `parallel`
//! feature they fan out over rayon; without it (or inside [`sequential`]) they
//! run on the calling thread. Results are identical either way: maps keep input
//! order and searches return the match with the smallest index.

use std::cell::Cell;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

thread_local! {
    static FORCED: Cell<Option<Strategy>> = const { Cell::new(None) };
}

/// The strategy in effect on this thread.
pub fn current() -> Strategy {
    match FORCED.with(|f| f.get()) {
        Some(s) => s,
        None if cfg!(feature = "parallel") => Strategy::Parallel,
        None => Strategy::Sequential,
    }
}

/// Runs `f` with the given strategy forced on the current thread.
pub fn with_strategy<R>(strategy: Strategy, f: impl FnOnce() -> R) -> R {
    let prev = FORCED.with(|c| c.replace(Some(strategy)));
    let out = f();
    FORCED.with(|c| c.set(prev));
    out
}

pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    with_strategy(Strategy::Sequential, f)
}

fn parallel_enabled(len: usize) -> bool {
    cfg!(feature = "parallel") && current() == Strategy::Parallel && len > 1
}

pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled(items.len()) {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = parallel_enabled;
    items.iter().map(f).collect()
}

pub fn map_range<U, F>(len: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled(len) {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    (0..len).map(f).collect()
}

/// First index in `0..len` (smallest) for which `f` yields `Some`.
pub fn find_first_range<U, F>(len: usize, f: F) -> Option<(usize, U)>
where
    U: Send,
    F: Fn(usize) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel_enabled(len) {
        use rayon::prelude::*;
        return (0..len)
            .into_par_iter()
            .filter_map(|i| f(i).map(|u| (i, u)))
            .find_first(|_| true);
    }
    (0..len).find_map(|i| f(i).map(|u| (i, u)))
}

pub fn find_first<T, U, F>(items: &[T], f: F) -> Option<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    find_first_range(items.len(), |i| f(&items[i])).map(|(_, u)| u)
}

pub fn all<T, F>(items: &[T], f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    find_first(items, |t| if f(t) { None } else { Some(()) }).is_none()
}
