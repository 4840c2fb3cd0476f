//! Execution policy for the data-parallel loops in this crate.
//!
//! With the `parallel` feature disabled every policy runs sequentially, so
//! callers can always pass [`Exec::Parallel`] without a cfg of their own.
//! Every helper returns the same value under both policies.

/// How a data-parallel loop should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Maps `f` over `items`, keeping input order.
pub fn map_collect<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Returns the result for the lowest index `i` in `0..len` where `f(i)` is `Some`.
pub fn find_map_first<R, F>(exec: Exec, len: usize, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().find_map_first(f);
    }
    let _ = exec;
    (0..len).find_map(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_match_is_identical_under_both_policies() {
        let f = |i: usize| if i % 7 == 3 && i > 20 { Some(i * 2) } else { None };
        assert_eq!(find_map_first(Exec::Sequential, 1000, f), Some(48));
        assert_eq!(find_map_first(Exec::Parallel, 1000, f), Some(48));
        assert_eq!(find_map_first(Exec::Parallel, 5, f), None);
    }

    #[test]
    fn map_keeps_order() {
        let xs: Vec<u32> = (0..500).collect();
        let seq = map_collect(Exec::Sequential, &xs, |x| x * x);
        let par = map_collect(Exec::Parallel, &xs, |x| x * x);
        assert_eq!(seq, par);
    }
}
