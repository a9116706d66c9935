//! Data-parallel sweep helpers. With the `parallel` feature (default) the
//! sweeps run on rayon; without it they fall back to plain iteration. All
//! helpers return order-deterministic results either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every item, results in input order.
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
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

/// Always-sequential variant, kept callable under any feature set so the
/// benches can compare both code paths.
pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// First `Some` produced by `f`, by input order.
pub fn find_map_first<T, U, F>(items: Vec<T>, f: F) -> Option<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().find_map(f)
    }
}

pub fn find_map_first_seq<T, U, F>(items: Vec<T>, f: F) -> Option<U>
where
    F: Fn(T) -> Option<U>,
{
    items.into_iter().find_map(f)
}

/// Evaluates `f` over the items and returns the outcomes for the prefix up
/// to and including the first hit (the first outcome where `is_hit` holds),
/// or all outcomes when nothing hits.
///
/// Sequentially this stops at the hit; in parallel every item is evaluated
/// but the returned prefix is identical, so aggregates computed from it
/// (counters, certificates) stay deterministic across both modes.
pub fn prefix_until_hit<T, R, F, H>(items: Vec<T>, f: F, is_hit: H) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
    H: Fn(&R) -> bool,
{
    #[cfg(feature = "parallel")]
    {
        let mut all: Vec<R> = items.into_par_iter().map(f).collect();
        if let Some(pos) = all.iter().position(&is_hit) {
            all.truncate(pos + 1);
        }
        all
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut out = Vec::new();
        for item in items {
            let r = f(item);
            let hit = is_hit(&r);
            out.push(r);
            if hit {
                break;
            }
        }
        out
    }
}
