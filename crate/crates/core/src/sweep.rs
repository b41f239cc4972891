//! Data-parallel sweeps with a sequential fallback.
//!
//! Every sweep returns its results in input order, so the two strategies are
//! observably identical. Without the `parallel` feature, `Parallel` runs
//! sequentially.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
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
    pub fn all() -> [Strategy; 2] {
        [Strategy::Sequential, Strategy::Parallel]
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Sequential => "sequential",
            Strategy::Parallel => "parallel",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sequential" | "seq" => Ok(Strategy::Sequential),
            "parallel" | "par" => Ok(Strategy::Parallel),
            other => Err(format!(
                "unknown strategy {other:?} (expected sequential or parallel)"
            )),
        }
    }
}

/// Inputs shorter than this run inline even under `Parallel`: handing a few
/// cheap items to the pool costs more than evaluating them.
pub const MIN_PARALLEL_LEN: usize = 32;

/// `items.iter().map(f)` collected in order.
pub fn map<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel if items.len() >= MIN_PARALLEL_LEN => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// `(0..n).map(f)` collected in order.
pub fn map_range<R, F>(strategy: Strategy, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel if n >= MIN_PARALLEL_LEN => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// First index (in order) whose item satisfies `pred`.
pub fn position<T, F>(strategy: Strategy, items: &[T], pred: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel if items.len() >= MIN_PARALLEL_LEN => {
            use rayon::prelude::*;
            items.par_iter().position_first(pred)
        }
        _ => items.iter().position(pred),
    }
}
