use std::collections::HashSet;

use rand::seq::index;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{pool_size, rng, Family, GenError, GenSpec, Stream};
use crate::dijkstra::ShortestPaths;
use crate::graph::{Graph, NodeId};
use crate::instance::Instance;

/// Node cap for the dense random families (RRU, RRW), whose edge count can
/// reach n(n-1)/2.
pub const RANDOM_DENSE_CAP: usize = 5000;

/// Random graph with a uniformly drawn edge count; `m` random customers of weight 1.
pub fn gen_rru(n: usize, m: usize, seed: u64) -> Result<Instance, GenError> {
    GenSpec::new(Family::Rru, n, m, seed).validate()?;
    let graph = dense_random_graph(n, seed)?;
    let customers = random_customers(n, m, seed);
    Ok(Instance::unweighted(graph, customers)?)
}

/// As [`gen_rru`] with customer weights drawn from `[0, 1)`.
pub fn gen_rrw(n: usize, m: usize, seed: u64) -> Result<Instance, GenError> {
    GenSpec::new(Family::Rrw, n, m, seed).validate()?;
    let graph = dense_random_graph(n, seed)?;
    let customers = random_customers(n, m, seed);
    let mut wrng = rng(seed, Stream::Weights);
    let weights = loop {
        let w: Vec<f64> = (0..m).map(|_| wrng.gen::<f64>()).collect();
        if w.iter().any(|&x| x > 0.0) {
            break w;
        }
    };
    Ok(Instance::new(graph, customers, weights)?)
}

/// Sparse random graph with `4n` edges; customers drawn from the
/// breadth-first neighborhood of a random source.
pub fn gen_rnu(n: usize, m: usize, seed: u64) -> Result<Instance, GenError> {
    GenSpec::new(Family::Rnu, n, m, seed).validate()?;
    let graph = sparse_random_graph(n, seed)?;
    let customers = pool_customers(&graph, m, seed, PoolOrder::Bfs);
    Ok(Instance::unweighted(graph, customers)?)
}

/// As [`gen_rnu`] with the neighborhood taken in shortest-path order.
pub fn gen_rdu(n: usize, m: usize, seed: u64) -> Result<Instance, GenError> {
    GenSpec::new(Family::Rdu, n, m, seed).validate()?;
    let graph = sparse_random_graph(n, seed)?;
    let customers = pool_customers(&graph, m, seed, PoolOrder::Dijkstra);
    Ok(Instance::unweighted(graph, customers)?)
}

fn random_customers(n: usize, m: usize, seed: u64) -> Vec<NodeId> {
    let mut customers = index::sample(&mut rng(seed, Stream::Customers), n, m).into_vec();
    customers.sort_unstable();
    customers
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum PoolOrder {
    Bfs,
    Dijkstra,
}

/// Picks `m` customers among the first `max(2m, floor(log2 n))` nodes
/// (excluding the source itself) reached from a random source.
pub(super) fn pool_customers(graph: &Graph, m: usize, seed: u64, order: PoolOrder) -> Vec<NodeId> {
    let n = graph.node_count();
    let source = rng(seed, Stream::Source).gen_range(0..n);
    let pool_len = pool_size(n, m);
    let pool: Vec<NodeId> = match order {
        PoolOrder::Bfs => graph.bfs_order(source).into_iter().skip(1).take(pool_len).collect(),
        PoolOrder::Dijkstra => ShortestPaths::new(graph)
            .full_order(source)
            .into_iter()
            .skip(1)
            .take(pool_len)
            .map(|(v, _)| v)
            .collect(),
    };
    let mut customers: Vec<NodeId> = index::sample(&mut rng(seed, Stream::Customers), pool.len(), m)
        .into_iter()
        .map(|k| pool[k])
        .collect();
    customers.sort_unstable();
    customers
}

/// Attaches each node `1..n` (in `labels` order) to a uniformly chosen
/// earlier node.
fn random_tree(labels: &[NodeId], rng: &mut impl Rng) -> Vec<(NodeId, NodeId)> {
    (1..labels.len())
        .map(|i| {
            let (a, b) = (labels[i], labels[rng.gen_range(0..i)]);
            (a.min(b), a.max(b))
        })
        .collect()
}

fn attach_costs(pairs: Vec<(NodeId, NodeId)>, seed: u64) -> Vec<(NodeId, NodeId, f64)> {
    let mut crng = rng(seed, Stream::Costs);
    pairs.into_iter().map(|(u, v)| (u, v, crng.gen::<f64>())).collect()
}

/// Index of the pair `u < v` among all pairs in lexicographic order.
fn pair_index(n: usize, u: usize, v: usize) -> usize {
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

fn pair_at(n: usize, p: usize) -> (usize, usize) {
    // Largest u with row_start(u) <= p.
    let row_start = |u: usize| u * n - u * (u + 1) / 2;
    let (mut lo, mut hi) = (0, n - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if row_start(mid) <= p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let u = if row_start(hi) <= p && hi < n - 1 { hi } else { lo };
    (u, u + 1 + (p - row_start(u)))
}

fn dense_random_graph(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n > RANDOM_DENSE_CAP {
        return Err(GenError::CapExceeded { n, cap: RANDOM_DENSE_CAP });
    }
    let mut trng = rng(seed, Stream::Topology);
    let all_pairs = n * (n - 1) / 2;
    let edge_count = if n < 2 { 0 } else { trng.gen_range(n - 1..=all_pairs) };

    let mut labels: Vec<NodeId> = (0..n).collect();
    labels.shuffle(&mut trng);
    let mut pairs = random_tree(&labels, &mut trng);

    // Uniform sample of the non-tree pairs, addressed by rank.
    let mut tree_idx: Vec<usize> = pairs.iter().map(|&(u, v)| pair_index(n, u, v)).collect();
    tree_idx.sort_unstable();
    let extra = edge_count - pairs.len();
    let mut ranks = index::sample(&mut trng, all_pairs - pairs.len(), extra).into_vec();
    ranks.sort_unstable();
    let mut skipped = 0;
    for r in ranks {
        let mut p = r + skipped;
        while skipped < tree_idx.len() && tree_idx[skipped] <= p {
            skipped += 1;
            p = r + skipped;
        }
        pairs.push(pair_at(n, p));
    }

    Ok(Graph::from_edges(n, &attach_costs(pairs, seed)).expect("generated edges are valid"))
}

fn sparse_random_graph(n: usize, seed: u64) -> Result<Graph, GenError> {
    let edge_count = 4 * n;
    if edge_count > n * (n - 1) / 2 {
        return Err(GenError::Infeasible(format!("{edge_count} edges do not fit a simple graph on {n} nodes")));
    }
    let mut trng = rng(seed, Stream::Topology);
    let labels: Vec<NodeId> = (0..n).collect();
    let mut pairs = random_tree(&labels, &mut trng);
    let mut seen: HashSet<(NodeId, NodeId)> = pairs.iter().copied().collect();
    while pairs.len() < edge_count {
        let a = trng.gen_range(0..n);
        let b = trng.gen_range(0..n);
        if a == b {
            continue;
        }
        let pair = (a.min(b), a.max(b));
        if seen.insert(pair) {
            pairs.push(pair);
        }
    }
    Ok(Graph::from_edges(n, &attach_costs(pairs, seed)).expect("generated edges are valid"))
}
