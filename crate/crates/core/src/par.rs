//! Thin switch between rayon and sequential iteration.
//!
//! Results must not depend on the schedule: callers map independent items
//! to values and reduce with order-insensitive operations (max, collect by
//! index), so the parallel and sequential paths are bit-identical.

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Maximum of `f` over items, parallel when enabled. NaN-free inputs assumed.
pub(crate) fn map_max<T, F>(items: Vec<T>, f: F) -> f64
where
    T: Send,
    F: Fn(T) -> f64 + Sync + Send,
{
    map_collect(items, f).into_iter().fold(0.0_f64, f64::max)
}
