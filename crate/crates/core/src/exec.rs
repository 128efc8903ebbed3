//! Sweep execution: data-parallel over instances when the `parallel`
//! feature is enabled, sequential otherwise or on request. Results always
//! come back in input order.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

impl Execution {
    /// Whether parallel execution is actually available in this build.
    pub fn effective(self) -> Execution {
        if cfg!(feature = "parallel") {
            self
        } else {
            Execution::Sequential
        }
    }

    /// Order-preserving map.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self.effective() {
            Execution::Sequential => items.iter().map(f).collect(),
            Execution::Parallel => parallel_map(items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree_and_preserve_order() {
        let xs: Vec<u64> = (0..100).collect();
        let a = Execution::Parallel.map(&xs, |x| x * x);
        let b = Execution::Sequential.map(&xs, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(a[7], 49);
    }
}
