//! Execution strategy for searches over independent cells.
//!
//! Every search in this crate is phrased as "evaluate an ordered list of
//! cells, keep the first hit" or "map a batch". The result never depends on
//! the strategy: parallel runs select the leftmost hit, exactly as the
//! sequential scan would.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Strategy {
    /// Returns `f(item)` for the first item (in slice order) where it is `Some`.
    pub fn find_map_first<T, R, F>(self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            Strategy::Sequential => items.iter().find_map(f),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => items.par_iter().find_map_first(f),
        }
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Strategy::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => items.par_iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_hit_is_leftmost() {
        let items: Vec<u32> = (0..1000).collect();
        let hit = Strategy::default().find_map_first(&items, |&i| (i % 97 == 96).then_some(i));
        assert_eq!(hit, Some(96));
        let seq = Strategy::Sequential.find_map_first(&items, |&i| (i % 97 == 96).then_some(i));
        assert_eq!(hit, seq);
    }

    #[test]
    fn map_preserves_order() {
        let items: Vec<u32> = (0..100).collect();
        let out = Strategy::default().map(&items, |&i| i * 2);
        assert_eq!(out, (0..100).map(|i| i * 2).collect::<Vec<_>>());
    }
}
