//! Order-preserving map and search that use rayon when enabled.

use crate::config::Config;

pub(crate) fn map<T, R, F>(cfg: &Config, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if cfg.parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = cfg;
    items.iter().map(f).collect()
}

/// Index and value of the first item (in slice order) for which `f` returns `Some`.
pub(crate) fn find_first<T, R, F>(cfg: &Config, items: &[T], f: F) -> Option<(usize, R)>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if cfg.parallel {
        use rayon::prelude::*;
        return items
            .par_iter()
            .enumerate()
            .filter_map(|(i, t)| f(t).map(|r| (i, r)))
            .find_first(|_| true);
    }
    let _ = cfg;
    items
        .iter()
        .enumerate()
        .find_map(|(i, t)| f(t).map(|r| (i, r)))
}
