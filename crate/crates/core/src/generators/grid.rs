use super::random::{pool_customers, PoolOrder};
use super::{rng, Family, GenError, GenSpec, Stream};
use crate::graph::Graph;
use crate::instance::Instance;

use rand::Rng;

/// Rows and columns of the near-square grid holding `n` nodes: `floor(sqrt n)`
/// rows of `ceil(n / rows)` columns, filled row-major (the last row may be
/// partial).
pub fn grid_shape(n: usize) -> (usize, usize) {
    let rows = n.isqrt().max(1);
    (rows, n.div_ceil(rows))
}

/// Grid graph; customers drawn from the breadth-first neighborhood of a random source.
pub fn gen_gnu(n: usize, m: usize, seed: u64) -> Result<Instance, GenError> {
    GenSpec::new(Family::Gnu, n, m, seed).validate()?;
    let graph = grid_graph(n, seed)?;
    let customers = pool_customers(&graph, m, seed, PoolOrder::Bfs);
    Ok(Instance::unweighted(graph, customers)?)
}

/// Grid graph; customers drawn from the shortest-path neighborhood of a random source.
pub fn gen_gdu(n: usize, m: usize, seed: u64) -> Result<Instance, GenError> {
    GenSpec::new(Family::Gdu, n, m, seed).validate()?;
    let graph = grid_graph(n, seed)?;
    let customers = pool_customers(&graph, m, seed, PoolOrder::Dijkstra);
    Ok(Instance::unweighted(graph, customers)?)
}

fn grid_graph(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n < 2 {
        return Err(GenError::Infeasible("grid needs at least 2 nodes".into()));
    }
    let (_, cols) = grid_shape(n);
    let mut crng = rng(seed, Stream::Costs);
    let mut edges = Vec::with_capacity(2 * n);
    for v in 0..n {
        if (v + 1) % cols != 0 && v + 1 < n {
            edges.push((v, v + 1, crng.gen::<f64>()));
        }
        if v + cols < n {
            edges.push((v, v + cols, crng.gen::<f64>()));
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("grid edges are valid"))
}
