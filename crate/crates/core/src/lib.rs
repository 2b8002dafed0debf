//! Exact and truncated-Dijkstra solvers for the 1-median problem on large
//! undirected graphs, with seeded instance generators and a batch
//! experiment harness.
//!
//! The truncated solvers stop each customer's Dijkstra search once every
//! other customer is settled, then pick a facility among the settled nodes:
//!
//! * [`solvers::solve_tda_sa`] only considers nodes settled from every customer;
//! * [`solvers::solve_tda_nna`] also considers partially settled nodes and
//!   fills missing distances with a detour through the nearest customer;
//! * [`solvers::solve_tda_spa`] takes the best detour over all customers.
//!
//! [`solvers::solve_exact`] is the exhaustive baseline and
//! [`solvers::solve_exact_truncated`] an exact solver built from the
//! truncated searches.

pub mod dijkstra;
pub mod exec;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod instance;
pub mod io;
pub mod solvers;
pub mod verify;

pub use exec::Execution;
pub use graph::{Graph, GraphError, NodeId};
pub use instance::{Instance, InstanceError};
pub use solvers::{Algorithm, SolveResult};
