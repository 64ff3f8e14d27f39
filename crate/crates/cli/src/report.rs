//! JSON documents printed by the subcommands. The schemas under
//! `docs/schemas/` describe exactly these shapes.

use std::collections::BTreeMap;

use plexmesh::distribute::MigrationReport;
use plexmesh::partition::PartitionMethod;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfoReport {
    pub dim: usize,
    pub points: usize,
    /// Points per depth, vertices first.
    pub depth_strata: Vec<usize>,
    /// Points per height, cells first.
    pub height_strata: Vec<usize>,
    pub cells: usize,
    pub vertices: usize,
    pub regions: BTreeMap<i64, usize>,
    pub boundary_markers: BTreeMap<i64, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub nparts: usize,
    pub method: PartitionMethod,
    pub cells: usize,
    pub dual_edges: usize,
    pub edge_cut: usize,
    pub imbalance: f64,
    pub part_sizes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributeReport {
    pub nparts: usize,
    pub method: PartitionMethod,
    pub migration: MigrationReport,
    pub total_bytes: usize,
    pub owned_cells: Vec<usize>,
    pub ghost_points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReorderReport {
    pub vertices: usize,
    pub nnz: usize,
    pub bandwidth_before: usize,
    pub bandwidth_after: usize,
    pub profile_before: usize,
    pub profile_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ordering {
    Input,
    Rcm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpyReport {
    pub ordering: Ordering,
    pub rows: usize,
    pub nnz: usize,
    pub bandwidth: usize,
    pub profile: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Workflow {
    Preprocessor,
    RuntimeDistribute,
}

/// Wall-clock seconds per stage. Never part of a reproducibility check.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub read: f64,
    pub partition: f64,
    pub migrate: f64,
    pub reorder: f64,
    pub total: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub workflow: Workflow,
    pub nparts: usize,
    /// Synthetic P1 fields moved along with the mesh.
    pub fields: usize,
    pub migration: MigrationReport,
    pub total_bytes: usize,
    pub timing: Timing,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchOutput {
    pub reports: Vec<BenchReport>,
}
