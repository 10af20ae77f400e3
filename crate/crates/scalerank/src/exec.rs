//! Deterministic execution helpers.
//!
//! All heavy loops in this crate run through the functions here. With the
//! `parallel` feature (the default) they fan out over the current rayon
//! thread pool; without it they run sequentially. Either way the result is
//! **bitwise identical**: ordered maps preserve item order, and floating-point
//! reductions always accumulate over the same fixed chunk boundaries in the
//! same order, independent of thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of fixed accumulation chunks used by [`chunked_accumulate`].
///
/// Chunk boundaries depend only on this constant and the item count — never
/// on thread count — so float summation order is reproducible everywhere.
pub const REDUCTION_CHUNKS: usize = 32;

/// Whether this build parallelizes (`parallel` feature enabled).
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// Maps `f` over `items`, returning results in item order.
///
/// `init` builds one scratch state per worker (per chunk in sequential mode);
/// `f` may mutate it freely between calls.
pub fn ordered_map<T, U, S, I, F>(items: &[T], init: I, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    S: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map_init(&init, |s, t| f(s, t)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut s = init();
        items.iter().map(|t| f(&mut s, t)).collect()
    }
}

/// Runs `f(index)` for every index in `0..n`, ignoring results.
pub fn for_each_index<S, I, F>(n: usize, init: I, f: F)
where
    S: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().for_each_init(&init, |s, i| f(s, i));
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut s = init();
        for i in 0..n {
            f(&mut s, i);
        }
    }
}

/// Sum-reduces per-item contributions into a dense `f64` vector of length
/// `len`, deterministically.
///
/// Items are split into [`REDUCTION_CHUNKS`] contiguous chunks. Each chunk
/// accumulates its items **in order** into a private buffer, and the chunk
/// buffers are then combined in chunk order. The floating-point addition
/// sequence is therefore a pure function of `items.len()` and `len`.
pub fn chunked_accumulate<T, S, I, F>(items: &[T], len: usize, init: I, f: F) -> Vec<f64>
where
    T: Sync,
    S: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &T, &mut [f64]) + Sync + Send,
{
    let n = items.len();
    if n == 0 {
        return vec![0.0; len];
    }
    let chunks = REDUCTION_CHUNKS.min(n);
    let per = n.div_ceil(chunks);
    let bounds: Vec<(usize, usize)> = (0..chunks)
        .map(|c| (c * per, ((c + 1) * per).min(n)))
        .filter(|(lo, hi)| lo < hi)
        .collect();

    let run_chunk = |state: &mut S, (lo, hi): &(usize, usize)| -> Vec<f64> {
        let mut acc = vec![0.0_f64; len];
        for item in &items[*lo..*hi] {
            f(state, item, &mut acc);
        }
        acc
    };

    let partials: Vec<Vec<f64>> = {
        #[cfg(feature = "parallel")]
        {
            bounds
                .par_iter()
                .map_init(&init, |s, b| run_chunk(s, b))
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            let mut s = init();
            bounds.iter().map(|b| run_chunk(&mut s, b)).collect()
        }
    };

    let mut total = vec![0.0_f64; len];
    for part in partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordered_map_preserves_order() {
        let items: Vec<usize> = (0..1000).collect();
        let out = ordered_map(&items, || 0usize, |_, &x| x * 2);
        assert_eq!(out, (0..1000).map(|x| x * 2).collect::<Vec<_>>());
    }

    #[test]
    fn chunked_accumulate_matches_plain_sum() {
        let items: Vec<usize> = (0..257).collect();
        let acc = chunked_accumulate(&items, 3, || (), |_, &i, out| {
            out[i % 3] += i as f64;
        });
        let mut expect = [0.0f64; 3];
        // Reproduce the exact chunked order: 32 chunks of ceil(257/32) = 9.
        let per = 257usize.div_ceil(32);
        for c in 0..32 {
            let (lo, hi) = (c * per, ((c + 1) * per).min(257));
            let mut part = [0.0f64; 3];
            for i in lo..hi {
                part[i % 3] += i as f64;
            }
            for k in 0..3 {
                expect[k] += part[k];
            }
        }
        assert_eq!(acc, expect);
    }

    #[test]
    fn chunked_accumulate_empty() {
        let items: Vec<usize> = vec![];
        let acc = chunked_accumulate(&items, 4, || (), |_, _, _| {});
        assert_eq!(acc, vec![0.0; 4]);
    }
}
