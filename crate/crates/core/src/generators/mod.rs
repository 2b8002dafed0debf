//! Seeded instance generators.
//!
//! Every generator is a pure function of its parameters. Randomness comes
//! from ChaCha8 keyed by the seed, with one independent stream per concern
//! (topology, costs, source, customers, weights), so changing how one
//! concern is sampled never shifts the draws of another.

mod adversarial;
mod expand;
mod grid;
mod random;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{Instance, InstanceError};

pub use adversarial::{gen_lb_instance, gen_tight_sa};
pub use expand::{expand_weighted, expand_weighted_with_cap, Expansion, DEFAULT_EXPANSION_CAP};
pub use grid::{gen_gdu, gen_gnu, grid_shape};
pub use random::{gen_rdu, gen_rnu, gen_rru, gen_rrw, RANDOM_DENSE_CAP};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("n = {n} exceeds the generator cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("customer {customer} has weight {weight}, expected a positive integer")]
    NonIntegerWeight { customer: usize, weight: f64 },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Random instance families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "RRU", alias = "rru")]
    Rru,
    #[serde(rename = "RRW", alias = "rrw")]
    Rrw,
    #[serde(rename = "RNU", alias = "rnu")]
    Rnu,
    #[serde(rename = "RDU", alias = "rdu")]
    Rdu,
    #[serde(rename = "GNU", alias = "gnu")]
    Gnu,
    #[serde(rename = "GDU", alias = "gdu")]
    Gdu,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::Rru, Family::Rrw, Family::Rnu, Family::Rdu, Family::Gnu, Family::Gdu];

    pub fn name(self) -> &'static str {
        match self {
            Family::Rru => "RRU",
            Family::Rrw => "RRW",
            Family::Rnu => "RNU",
            Family::Rdu => "RDU",
            Family::Gnu => "GNU",
            Family::Gdu => "GDU",
        }
    }

    /// Families whose customers carry weights other than 1.
    pub fn is_weighted(self) -> bool {
        self == Family::Rrw
    }

    /// Families drawing customers from a pool near a random source.
    pub fn uses_pool(self) -> bool {
        !matches!(self, Family::Rru | Family::Rrw)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family `{s}` (expected one of RRU, RRW, RNU, RDU, GNU, GDU)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, m: usize, seed: u64) -> Self {
        Self { family, n, m, seed }
    }

    /// Checks the family's parameter constraints without generating.
    pub fn validate(&self) -> Result<(), GenError> {
        if self.n == 0 || self.m == 0 {
            return Err(GenError::Infeasible(format!("n = {} and m = {} must be positive", self.n, self.m)));
        }
        if self.m > self.n {
            return Err(GenError::Infeasible(format!("m = {} exceeds n = {}", self.m, self.n)));
        }
        if self.family.uses_pool() {
            let pool = pool_size(self.n, self.m);
            if pool > self.n - 1 {
                return Err(GenError::Infeasible(format!(
                    "customer pool of {pool} nodes exceeds n - 1 = {}",
                    self.n - 1
                )));
            }
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Instance, GenError> {
        let Self { family, n, m, seed } = *self;
        match family {
            Family::Rru => gen_rru(n, m, seed),
            Family::Rrw => gen_rrw(n, m, seed),
            Family::Rnu => gen_rnu(n, m, seed),
            Family::Rdu => gen_rdu(n, m, seed),
            Family::Gnu => gen_gnu(n, m, seed),
            Family::Gdu => gen_gdu(n, m, seed),
        }
    }
}

/// Size of the candidate pool customers are drawn from: `max(2m, floor(log2 n))`.
pub fn pool_size(n: usize, m: usize) -> usize {
    (2 * m).max(n.max(1).ilog2() as usize)
}

#[derive(Debug, Clone, Copy)]
#[repr(u64)]
enum Stream {
    Topology = 0,
    Costs = 1,
    Source = 2,
    Customers = 3,
    Weights = 4,
}

fn rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}
