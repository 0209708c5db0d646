//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the [`Strategy::Parallel`]
//! variant dispatches to rayon. Without it both variants run sequentially, so
//! callers never need their own `cfg` gates. Every helper returns results in
//! index order, so the choice of strategy never changes an answer.

/// Smallest number of items a parallel task is given.
pub const MIN_CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// `(0..n).map(f).collect()`, possibly in parallel.
pub fn map_indexed<T, F>(strategy: Strategy, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().with_min_len(MIN_CHUNK).map(f).collect();
    }
    let _ = strategy;
    (0..n).map(f).collect()
}

/// `items.iter().map(f).collect()`, possibly in parallel.
pub fn map_slice<S, T, F>(strategy: Strategy, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().with_min_len(MIN_CHUNK).map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// Overwrites `out[i] = f(i)` for every index, possibly in parallel.
pub fn fill_indexed<T, F>(strategy: Strategy, out: &mut [T], f: F)
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        out.par_iter_mut().with_min_len(MIN_CHUNK).enumerate().for_each(|(i, slot)| *slot = f(i));
        return;
    }
    let _ = strategy;
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = f(i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let seq = map_indexed(Strategy::Sequential, 100, |i| i * i);
        let par = map_indexed(Strategy::Parallel, 100, |i| i * i);
        assert_eq!(seq, par);
        let mut a = vec![0u64; 50];
        let mut b = vec![0u64; 50];
        fill_indexed(Strategy::Sequential, &mut a, |i| (i as u64) << 3);
        fill_indexed(Strategy::Parallel, &mut b, |i| (i as u64) << 3);
        assert_eq!(a, b);
    }
}
