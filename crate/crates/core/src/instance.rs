use thiserror::Error;

use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error("customer set is empty")]
    NoCustomers,
    #[error("{customers} customers but {weights} weights")]
    LengthMismatch { customers: usize, weights: usize },
    #[error("customer id {0} out of range")]
    CustomerOutOfRange(NodeId),
    #[error("customer {0} listed more than once")]
    DuplicateCustomer(NodeId),
    #[error("customer {customer} has negative or non-finite weight {weight}")]
    InvalidWeight { customer: NodeId, weight: f64 },
    #[error("all customer weights are zero")]
    AllZeroWeights,
    #[error("graph is not connected")]
    Disconnected,
}

/// A 1-median problem: a connected graph plus weighted customer nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    graph: Graph,
    customers: Vec<NodeId>,
    weights: Vec<f64>,
}

impl Instance {
    pub fn new(graph: Graph, customers: Vec<NodeId>, weights: Vec<f64>) -> Result<Self, InstanceError> {
        if customers.is_empty() {
            return Err(InstanceError::NoCustomers);
        }
        if customers.len() != weights.len() {
            return Err(InstanceError::LengthMismatch { customers: customers.len(), weights: weights.len() });
        }
        let n = graph.node_count();
        let mut seen = vec![false; n];
        for &c in &customers {
            if c >= n {
                return Err(InstanceError::CustomerOutOfRange(c));
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(InstanceError::DuplicateCustomer(c));
            }
        }
        for (&customer, &weight) in customers.iter().zip(&weights) {
            if !(weight >= 0.0) || !weight.is_finite() {
                return Err(InstanceError::InvalidWeight { customer, weight });
            }
        }
        if weights.iter().all(|&w| w == 0.0) {
            return Err(InstanceError::AllZeroWeights);
        }
        if !graph.is_connected() {
            return Err(InstanceError::Disconnected);
        }
        Ok(Self { graph, customers, weights })
    }

    /// Instance with every customer weight equal to 1.
    pub fn unweighted(graph: Graph, customers: Vec<NodeId>) -> Result<Self, InstanceError> {
        let weights = vec![1.0; customers.len()];
        Self::new(graph, customers, weights)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn customers(&self) -> &[NodeId] {
        &self.customers
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn customer_count(&self) -> usize {
        self.customers.len()
    }

    /// True when every customer carries the same weight.
    pub fn has_uniform_weights(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] == w[1])
    }

    /// Position of `node` in the customer list, if it is a customer.
    pub fn customer_index(&self, node: NodeId) -> Option<usize> {
        self.customers.iter().position(|&c| c == node)
    }

    pub fn into_parts(self) -> (Graph, Vec<NodeId>, Vec<f64>) {
        (self.graph, self.customers, self.weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn validates_customers_and_weights() {
        assert_eq!(Instance::new(path3(), vec![], vec![]), Err(InstanceError::NoCustomers));
        assert_eq!(Instance::new(path3(), vec![0, 0], vec![1.0, 1.0]), Err(InstanceError::DuplicateCustomer(0)));
        assert_eq!(Instance::new(path3(), vec![3], vec![1.0]), Err(InstanceError::CustomerOutOfRange(3)));
        assert_eq!(Instance::new(path3(), vec![0, 2], vec![0.0, 0.0]), Err(InstanceError::AllZeroWeights));
        assert!(matches!(
            Instance::new(path3(), vec![0], vec![-1.0]),
            Err(InstanceError::InvalidWeight { .. })
        ));
        assert_eq!(
            Instance::new(path3(), vec![0], vec![1.0, 2.0]),
            Err(InstanceError::LengthMismatch { customers: 1, weights: 2 })
        );
        let disconnected = Graph::from_edges(3, &[(0, 1, 1.0)]).unwrap();
        assert_eq!(Instance::unweighted(disconnected, vec![0]), Err(InstanceError::Disconnected));
        let ok = Instance::new(path3(), vec![0, 2], vec![2.0, 0.0]).unwrap();
        assert_eq!(ok.customer_count(), 2);
        assert!(!ok.has_uniform_weights());
    }
}
