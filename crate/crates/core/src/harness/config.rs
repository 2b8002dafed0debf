use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::generators::Family;
use crate::solvers::{Algorithm, DEFAULT_ORACLE_CAP};

/// A grid of `(family, n, m)` cells; every combination is one cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellGrid {
    pub families: Vec<Family>,
    pub n: Vec<usize>,
    pub m: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub family: Family,
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    #[serde(default)]
    pub csv: Option<PathBuf>,
    #[serde(default)]
    pub json: Option<PathBuf>,
}

/// Batch experiment description, loadable from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub grids: Vec<CellGrid>,
    pub instances_per_cell: usize,
    #[serde(default)]
    pub base_seed: u64,
    pub algorithms: Vec<Algorithm>,
    /// Compute the Bellman-Ford reference on cells small enough for it.
    #[serde(default)]
    pub oracle: bool,
    #[serde(default = "default_oracle_cap")]
    pub oracle_cap: usize,
    #[serde(default = "default_timing_repeats")]
    pub timing_repeats: usize,
    #[serde(default)]
    pub output: OutputPaths,
}

fn default_oracle_cap() -> usize {
    DEFAULT_ORACLE_CAP
}

fn default_timing_repeats() -> usize {
    1
}

impl SuiteConfig {
    pub fn new(grids: Vec<CellGrid>, instances_per_cell: usize, algorithms: Vec<Algorithm>) -> Self {
        Self {
            grids,
            instances_per_cell,
            base_seed: 0,
            algorithms,
            oracle: false,
            oracle_cap: DEFAULT_ORACLE_CAP,
            timing_repeats: 1,
            output: OutputPaths::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let config: Self = serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, HarnessError> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let fail = |msg: &str| Err(HarnessError::Config(msg.to_string()));
        if self.instances_per_cell == 0 {
            return fail("instances_per_cell must be at least 1");
        }
        if self.algorithms.is_empty() {
            return fail("at least one algorithm is required");
        }
        if self.timing_repeats == 0 {
            return fail("timing_repeats must be at least 1");
        }
        if self.grids.iter().any(|g| g.families.is_empty() || g.n.is_empty() || g.m.is_empty()) {
            return fail("every grid needs at least one family, n and m");
        }
        Ok(())
    }

    /// Cells in grid order, then family, n, m.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for grid in &self.grids {
            for &family in &grid.families {
                for &n in &grid.n {
                    for &m in &grid.m {
                        cells.push(Cell { family, n, m });
                    }
                }
            }
        }
        cells
    }

    /// Whether the oracle runs on instances with `n` nodes.
    pub fn oracle_enabled_for(&self, n: usize) -> bool {
        self.oracle && n <= self.oracle_cap
    }
}

/// Seed of one replicate: a SplitMix64 hash of `(base, cell, replicate)`.
pub fn derive_seed(base: u64, cell: usize, replicate: usize) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(base ^ mix((cell as u64) << 32 ^ replicate as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_config() {
        let c = SuiteConfig::from_json(
            r#"{"grids":[{"families":["RRU","rrw"],"n":[50],"m":[2,4]}],
                "instances_per_cell":3,"algorithms":["exact","sa","nna"]}"#,
        )
        .unwrap();
        assert_eq!(c.cells().len(), 4);
        assert_eq!(c.cells()[2], Cell { family: Family::Rrw, n: 50, m: 2 });
        assert_eq!(c.timing_repeats, 1);
        assert!(!c.oracle_enabled_for(50));
    }

    #[test]
    fn rejects_bad_configs() {
        let unknown = SuiteConfig::from_json(
            r#"{"grids":[{"families":["XYZ"],"n":[50],"m":[2]}],"instances_per_cell":1,"algorithms":["sa"]}"#,
        );
        assert!(matches!(unknown, Err(HarnessError::Config(_))));
        let zero = SuiteConfig::from_json(
            r#"{"grids":[{"families":["RRU"],"n":[50],"m":[2]}],"instances_per_cell":0,"algorithms":["sa"]}"#,
        );
        assert!(matches!(zero, Err(HarnessError::Config(_))));
        let extra = SuiteConfig::from_json(
            r#"{"grids":[],"instances_per_cell":1,"algorithms":["sa"],"bogus":1}"#,
        );
        assert!(matches!(extra, Err(HarnessError::Config(_))));
    }

    #[test]
    fn seeds_do_not_collide_across_cells() {
        let mut seen = std::collections::HashSet::new();
        for cell in 0..50 {
            for rep in 0..200 {
                assert!(seen.insert(derive_seed(7, cell, rep)));
            }
        }
        assert_eq!(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
    }
}
