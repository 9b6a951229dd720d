//! Data-parallel execution with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] fans work
//! out over rayon; without it every mode runs sequentially. Results are always
//! returned in input order, so output never depends on the worker count.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// `workers = None` uses the global pool (available parallelism).
    #[default]
    Parallel,
    Workers(usize),
}

impl Exec {
    /// `--workers` semantics: 0 means "all cores", 1 means sequential.
    pub fn from_workers(workers: usize) -> Self {
        match workers {
            0 => Exec::Parallel,
            1 => Exec::Sequential,
            n => Exec::Workers(n),
        }
    }

    /// `(0..n).map(f)` in order, possibly in parallel.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            #[cfg(feature = "parallel")]
            Exec::Workers(w) => {
                use rayon::prelude::*;
                match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
                    Ok(pool) => pool.install(|| (0..n).into_par_iter().map(f).collect()),
                    Err(_) => (0..n).map(f).collect(),
                }
            }
            #[cfg(not(feature = "parallel"))]
            _ => (0..n).map(f).collect(),
        }
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        self.map_range(items.len(), |i| f(&items[i]))
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self != Exec::Sequential
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        for exec in [Exec::Sequential, Exec::Parallel, Exec::Workers(3)] {
            let v = exec.map_range(100, |i| i * i);
            assert_eq!(v, (0..100).map(|i| i * i).collect::<Vec<_>>());
        }
    }

    #[test]
    fn workers_flag() {
        assert_eq!(Exec::from_workers(1), Exec::Sequential);
        assert_eq!(Exec::from_workers(0), Exec::Parallel);
        assert_eq!(Exec::from_workers(4), Exec::Workers(4));
    }
}
