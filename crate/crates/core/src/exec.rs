/// How data-parallel loops are scheduled.
///
/// Both variants produce bit-identical results: parallel loops collect
/// per-chunk partials in index order and reduce them sequentially.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    /// Rayon when the `parallel` feature is enabled, otherwise sequential.
    #[default]
    Parallel,
}

impl Execution {
    /// Maps `f` over `0..len`, preserving index order in the output.
    pub fn map<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                (0..len).into_par_iter().map(f).collect()
            }
            _ => (0..len).map(f).collect(),
        }
    }

    /// Maps `f` over a slice, preserving order.
    pub fn map_slice<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        self.map(items.len(), |i| f(&items[i]))
    }

    /// Largest value of `f` over `0..len` (0 for an empty range). NaN wins.
    pub fn max(self, len: usize, f: impl Fn(usize) -> f64 + Sync + Send) -> f64 {
        self.map(len, f).into_iter().fold(0.0, nan_max)
    }
}

pub(crate) fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}
