//! Sequential / data-parallel execution of the engine's hot loops.
//!
//! Every parallel path has a sequential twin producing identical output.
//! [`Execution::Parallel`] silently degrades to sequential when the crate is
//! built without the `parallel` feature.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
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
    /// Whether this mode actually runs on the rayon pool in the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Order-preserving map.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving flat map.
    pub fn flat_map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> Vec<U> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().flat_map_iter(f).collect();
        }
        items.iter().flat_map(f).collect()
    }

    /// Fill `out` in chunks of `chunk` elements; `f(chunk_index, chunk)`.
    pub fn fill_chunks<U, F>(self, out: &mut [U], chunk: usize, f: F)
    where
        U: Send,
        F: Fn(usize, &mut [U]) + Sync + Send,
    {
        let chunk = chunk.max(1);
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            out.par_chunks_mut(chunk)
                .enumerate()
                .for_each(|(i, c)| f(i, c));
            return;
        }
        out.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
    }

    /// Histogram of `key(i)` for `i in 0..n`, with `width` buckets.
    ///
    /// Keys at or beyond `width` are a caller bug and panic.
    pub fn histogram<F>(self, n: usize, width: usize, key: F) -> Vec<u64>
    where
        F: Fn(usize) -> usize + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n)
                .into_par_iter()
                .fold(
                    || vec![0u64; width],
                    |mut h, i| {
                        h[key(i)] += 1;
                        h
                    },
                )
                .reduce(
                    || vec![0u64; width],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        a
                    },
                );
        }
        let mut h = vec![0u64; width];
        for i in 0..n {
            h[key(i)] += 1;
        }
        h
    }
}
