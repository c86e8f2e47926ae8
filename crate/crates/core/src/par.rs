//! Data-parallel helpers with a sequential fallback.
//!
//! Without the `parallel` feature both modes run on the calling thread.

/// How batch verifications are scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// The result for the lowest index `i < n` where `f(i)` is `Some`.
/// Deterministic in both modes.
pub(crate) fn find_first<T, F>(n: usize, exec: Execution, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().find_map_first(f)
        }
        _ => (0..n).find_map(f),
    }
}

/// `f` over `0..n`, collected in index order.
pub(crate) fn map_indexed<T, F>(n: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_hit_is_lowest_index() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let hit = find_first(1000, exec, |i| (i % 97 == 96 || i == 500).then_some(i));
            assert_eq!(hit, Some(96));
            assert_eq!(find_first(10, exec, |_| None::<()>), None);
            assert_eq!(map_indexed(5, exec, |i| i * i), vec![0, 1, 4, 9, 16]);
        }
    }
}
