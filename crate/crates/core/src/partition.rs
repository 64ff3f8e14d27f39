//! Cell dual graph and deterministic cell partitioning heuristics.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Plex, PointId, Result, Scalar};

/// Cells adjacent through a shared facet. Nodes are positions in
/// `plex.cells()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    offsets: Vec<usize>,
    adjacency: Vec<usize>,
}

impl DualGraph {
    /// Builds a graph from neighbour lists; each list is sorted and
    /// deduplicated. Symmetry is not enforced.
    pub fn from_adjacency(lists: Vec<Vec<usize>>) -> Result<DualGraph> {
        let n = lists.len();
        let mut offsets = vec![0];
        let mut adjacency = Vec::new();
        for (c, mut list) in lists.into_iter().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.iter().any(|&d| d >= n || d == c) {
                return Err(Error::Partition(format!("bad neighbour list for node {c}")));
            }
            adjacency.extend(list);
            offsets.push(adjacency.len());
        }
        Ok(DualGraph { offsets, adjacency })
    }

    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn neighbors(&self, c: usize) -> &[usize] {
        &self.adjacency[self.offsets[c]..self.offsets[c + 1]]
    }

    /// Number of undirected edges.
    pub fn num_edges(&self) -> usize {
        self.adjacency.len() / 2
    }
}

/// Cells are adjacent iff some height-1 point has both in its support.
pub fn build_dual_graph(plex: &Plex) -> Result<DualGraph> {
    if !plex.is_interpolated() {
        return Err(Error::NotInterpolated);
    }
    let cells = plex.cells();
    let mut index = vec![usize::MAX; plex.chart_size()];
    for (i, c) in cells.iter().enumerate() {
        index[c.0] = i;
    }
    let mut lists = vec![Vec::new(); cells.len()];
    for &f in plex.height_stratum(1) {
        let support = plex.support_unchecked(f);
        for &a in support {
            for &b in support {
                if a != b {
                    lists[index[a.0]].push(index[b.0]);
                }
            }
        }
    }
    DualGraph::from_adjacency(lists)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionMethod {
    GreedyBfs,
    CoordinateBisection,
}

impl fmt::Display for PartitionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartitionMethod::GreedyBfs => "greedy-bfs",
            PartitionMethod::CoordinateBisection => "coordinate-bisection",
        })
    }
}

impl FromStr for PartitionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy-bfs" => Ok(PartitionMethod::GreedyBfs),
            "coordinate-bisection" => Ok(PartitionMethod::CoordinateBisection),
            other => Err(Error::Partition(format!("unknown method {other:?}"))),
        }
    }
}

/// Rank of every cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionMap {
    pub ranks: Vec<usize>,
    pub nparts: usize,
}

impl PartitionMap {
    pub fn new(ranks: Vec<usize>, nparts: usize) -> Result<PartitionMap> {
        if nparts == 0 {
            return Err(Error::Partition("nparts must be at least 1".into()));
        }
        if let Some(&r) = ranks.iter().find(|&&r| r >= nparts) {
            return Err(Error::Partition(format!("rank {r} >= nparts {nparts}")));
        }
        Ok(PartitionMap { ranks, nparts })
    }

    pub fn num_cells(&self) -> usize {
        self.ranks.len()
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.nparts];
        for &r in &self.ranks {
            sizes[r] += 1;
        }
        sizes
    }

    /// Cell points owned by `rank`, ascending.
    pub fn cells_of(&self, plex: &Plex, rank: usize) -> Vec<PointId> {
        plex.cells()
            .iter()
            .zip(&self.ranks)
            .filter(|(_, &r)| r == rank)
            .map(|(&c, _)| c)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionStats {
    pub edge_cut: usize,
    /// Largest part size over the mean part size.
    pub imbalance: f64,
}

pub fn partition_cells<T: Scalar>(
    graph: &DualGraph,
    nparts: usize,
    method: PartitionMethod,
    centroids: Option<&[Vec<T>]>,
) -> Result<PartitionMap> {
    let n = graph.num_nodes();
    if nparts == 0 {
        return Err(Error::Partition("nparts must be at least 1".into()));
    }
    if nparts > n {
        return Err(Error::Partition(format!(
            "cannot split {n} cells into {nparts} parts"
        )));
    }
    let ranks = match method {
        PartitionMethod::GreedyBfs => greedy_bfs(graph, nparts),
        PartitionMethod::CoordinateBisection => {
            let centroids = centroids.ok_or_else(|| {
                Error::Partition("coordinate bisection needs cell centroids".into())
            })?;
            if centroids.len() != n {
                return Err(Error::SizeMismatch(format!(
                    "{} centroids for {n} cells",
                    centroids.len()
                )));
            }
            let mut ranks = vec![0; n];
            let mut cells: Vec<usize> = (0..n).collect();
            bisect(&mut cells, centroids, 0, nparts, &mut ranks);
            ranks
        }
    };
    PartitionMap::new(ranks, nparts)
}

/// Grows one part at a time breadth first from the lowest unassigned cell.
/// Part `k` targets `ceil(remaining cells / remaining parts)`, which is
/// `ceil(n / nparts)` for the first part and never leaves a later part empty.
fn greedy_bfs(graph: &DualGraph, nparts: usize) -> Vec<usize> {
    let n = graph.num_nodes();
    let mut ranks = vec![usize::MAX; n];
    let mut assigned = 0;
    let mut next_seed = 0;
    for part in 0..nparts {
        let target = (n - assigned).div_ceil(nparts - part);
        let mut size = 0;
        let mut queue = VecDeque::new();
        while size < target {
            let Some(u) = queue.pop_front() else {
                while ranks[next_seed] != usize::MAX {
                    next_seed += 1;
                }
                ranks[next_seed] = part;
                size += 1;
                queue.push_back(next_seed);
                continue;
            };
            for &w in graph.neighbors(u) {
                if size == target {
                    break;
                }
                if ranks[w] == usize::MAX {
                    ranks[w] = part;
                    size += 1;
                    queue.push_back(w);
                }
            }
        }
        assigned += size;
    }
    ranks
}

/// Recursive coordinate bisection: split `cells` along the widest centroid
/// axis so that the left part gets its proportional share, median included.
fn bisect<T: Scalar>(
    cells: &mut [usize],
    centroids: &[Vec<T>],
    first_rank: usize,
    nparts: usize,
    ranks: &mut [usize],
) {
    if nparts == 1 {
        for &c in cells.iter() {
            ranks[c] = first_rank;
        }
        return;
    }
    let dim = centroids[cells[0]].len();
    let axis = (0..dim)
        .map(|k| {
            let (lo, hi) = cells
                .iter()
                .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &c| {
                    let x = centroids[c][k];
                    (lo.min(x), hi.max(x))
                });
            (k, hi - lo)
        })
        .fold((0, T::neg_infinity()), |best, (k, w)| {
            if w > best.1 {
                (k, w)
            } else {
                best
            }
        })
        .0;
    cells.sort_by(|&a, &b| {
        centroids[a][axis]
            .partial_cmp(&centroids[b][axis])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let left_parts = nparts / 2;
    let right_parts = nparts - left_parts;
    let n = cells.len();
    let split = (n * left_parts)
        .div_ceil(nparts)
        .clamp(left_parts, n - right_parts);
    let (left, right) = cells.split_at_mut(split);
    bisect(left, centroids, first_rank, left_parts, ranks);
    bisect(
        right,
        centroids,
        first_rank + left_parts,
        right_parts,
        ranks,
    );
}

pub fn partition_stats(graph: &DualGraph, map: &PartitionMap) -> Result<PartitionStats> {
    if graph.num_nodes() != map.num_cells() {
        return Err(Error::SizeMismatch(format!(
            "graph has {} cells, partition covers {}",
            graph.num_nodes(),
            map.num_cells()
        )));
    }
    let mut edge_cut = 0;
    for c in 0..graph.num_nodes() {
        edge_cut += graph
            .neighbors(c)
            .iter()
            .filter(|&&d| d > c && map.ranks[d] != map.ranks[c])
            .count();
    }
    let sizes = map.part_sizes();
    let max = *sizes.iter().max().unwrap_or(&0) as f64;
    let mean = map.num_cells() as f64 / map.nparts as f64;
    let imbalance = if mean > 0.0 { max / mean } else { 1.0 };
    Ok(PartitionStats {
        edge_cut,
        imbalance,
    })
}
