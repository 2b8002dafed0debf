//! Execution mode for per-source shortest-path batches.
//!
//! With the `parallel` feature, [`Execution::Parallel`] distributes work over
//! the current rayon pool. Without it, both modes run sequentially. Results
//! are always returned in input order, so the mode never changes output.

use serde::{Deserialize, Serialize};

use crate::dijkstra::ShortestPaths;
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
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

/// Applies `f` to each source with a search workspace over `graph`.
pub(crate) fn map_sources<T, F>(graph: &Graph, sources: &[NodeId], exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ShortestPaths<'_>, NodeId) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel if sources.len() > 1 => {
            use rayon::prelude::*;
            sources
                .par_iter()
                .map_init(|| ShortestPaths::new(graph), |sp, &s| f(sp, s))
                .collect()
        }
        _ => {
            let mut sp = ShortestPaths::new(graph);
            sources.iter().map(|&s| f(&mut sp, s)).collect()
        }
    }
}

/// Order-preserving map over independent items.
pub(crate) fn map_items<I, T, F>(items: Vec<I>, exec: Execution, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.into_par_iter().map(f).collect()
        }
        _ => items.into_iter().map(f).collect(),
    }
}
