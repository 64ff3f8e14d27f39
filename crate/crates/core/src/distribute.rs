//! Simulated distribution of a sequential mesh over ranks.
//!
//! Ranks are plain values: every rank's local mesh is extracted
//! independently from the root bundle, and all cross-rank information lives
//! in the [`StarForest`], which links each non-owned local point (a leaf) to
//! the owning rank's copy of it.

use std::collections::HashMap;
use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::io::MeshBundle;
use crate::partition::PartitionMap;
use crate::renumber::Permutation;
use crate::section::Field;
use crate::{Error, Label, Plex, PointId, Result, Scalar, Section};

/// Bytes per migrated index (cone entry or point metadata word).
pub const INDEX_BYTES: usize = 8;

/// A non-owned local point and the owner's copy of it. Serialises as
/// `[local, owner_rank, owner_point]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 3]", into = "[usize; 3]")]
pub struct Leaf {
    pub local: PointId,
    pub owner_rank: usize,
    pub owner_point: PointId,
}

impl From<[usize; 3]> for Leaf {
    fn from([local, owner_rank, owner_point]: [usize; 3]) -> Self {
        Leaf {
            local: PointId(local),
            owner_rank,
            owner_point: PointId(owner_point),
        }
    }
}

impl From<Leaf> for [usize; 3] {
    fn from(leaf: Leaf) -> Self {
        [leaf.local.0, leaf.owner_rank, leaf.owner_point.0]
    }
}

/// Per-rank leaf lists, each sorted by local point.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StarForest {
    leaves: Vec<Vec<Leaf>>,
}

/// One rank's entry in the JSON star-forest sidecar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankLeaves {
    pub rank: usize,
    pub leaves: Vec<Leaf>,
}

impl StarForest {
    pub fn new(mut leaves: Vec<Vec<Leaf>>) -> Self {
        for l in &mut leaves {
            l.sort_unstable();
        }
        StarForest { leaves }
    }

    pub fn nranks(&self) -> usize {
        self.leaves.len()
    }

    pub fn leaves(&self, rank: usize) -> &[Leaf] {
        &self.leaves[rank]
    }

    pub fn num_leaves(&self) -> usize {
        self.leaves.iter().map(Vec::len).sum()
    }

    pub fn is_leaf(&self, rank: usize, p: PointId) -> bool {
        self.leaves[rank]
            .binary_search_by_key(&p, |l| l.local)
            .is_ok()
    }

    /// Follows a local renumbering of `rank`: its own leaves and every other
    /// rank's references to it are rewritten.
    pub fn relabel_rank(&self, rank: usize, perm: &Permutation) -> StarForest {
        let leaves = self
            .leaves
            .iter()
            .enumerate()
            .map(|(r, list)| {
                list.iter()
                    .map(|&l| Leaf {
                        local: if r == rank {
                            perm.apply(l.local)
                        } else {
                            l.local
                        },
                        owner_rank: l.owner_rank,
                        owner_point: if l.owner_rank == rank {
                            perm.apply(l.owner_point)
                        } else {
                            l.owner_point
                        },
                    })
                    .collect()
            })
            .collect();
        StarForest::new(leaves)
    }

    pub fn to_sidecar(&self) -> Vec<RankLeaves> {
        self.leaves
            .iter()
            .enumerate()
            .map(|(rank, leaves)| RankLeaves {
                rank,
                leaves: leaves.clone(),
            })
            .collect()
    }

    pub fn from_sidecar(entries: Vec<RankLeaves>) -> Result<StarForest> {
        let mut leaves = vec![Vec::new(); entries.len()];
        for e in entries {
            let slot = leaves
                .get_mut(e.rank)
                .ok_or_else(|| Error::Distribution(format!("rank {} out of range", e.rank)))?;
            *slot = e.leaves;
        }
        Ok(StarForest::new(leaves))
    }
}

/// Points one rank holds after closing its partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankPoints {
    pub rank: usize,
    /// Global cells assigned to this rank, ascending.
    pub owned_cells: Vec<PointId>,
    /// Global cells of other ranks sharing a facet with an owned cell.
    pub overlap_cells: Vec<PointId>,
    /// Closure of owned and overlap cells, ascending.
    pub points: Vec<PointId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPartition {
    pub ranks: Vec<RankPoints>,
    /// Owning rank of every global point: the lowest rank whose owned cells
    /// contain it in their closure.
    pub owner: Vec<usize>,
}

/// Closes every rank's cells downwards and adds one layer of facet-adjacent
/// overlap cells.
pub fn close_partition(plex: &Plex, map: &PartitionMap) -> Result<ClosedPartition> {
    let cells = plex.cells();
    if map.num_cells() != cells.len() {
        return Err(Error::SizeMismatch(format!(
            "partition covers {} cells, plex has {}",
            map.num_cells(),
            cells.len()
        )));
    }
    let mut cell_rank = vec![usize::MAX; plex.chart_size()];
    for (&c, &r) in cells.iter().zip(&map.ranks) {
        cell_rank[c.0] = r;
    }
    let closures: Vec<Vec<PointId>> = cells
        .iter()
        .map(|&c| plex.closure(c))
        .collect::<Result<_>>()?;
    let mut cell_index = vec![usize::MAX; plex.chart_size()];
    for (i, c) in cells.iter().enumerate() {
        cell_index[c.0] = i;
    }

    let mut owner = vec![usize::MAX; plex.chart_size()];
    for (closure, &r) in closures.iter().zip(&map.ranks) {
        for q in closure {
            owner[q.0] = owner[q.0].min(r);
        }
    }

    let ranks = (0..map.nparts)
        .map(|rank| {
            let owned_cells = map.cells_of(plex, rank);
            let mut overlap_cells: Vec<PointId> = owned_cells
                .iter()
                .flat_map(|&c| plex.cone_unchecked(c).iter())
                .filter(|&&f| plex.height(f) == 1)
                .flat_map(|&f| plex.support_unchecked(f).iter().copied())
                .filter(|d| cell_rank[d.0] != rank)
                .collect();
            overlap_cells.sort_unstable();
            overlap_cells.dedup();
            let mut points: Vec<PointId> = owned_cells
                .iter()
                .chain(&overlap_cells)
                .flat_map(|c| closures[cell_index[c.0]].iter().copied())
                .collect();
            points.sort_unstable();
            points.dedup();
            RankPoints {
                rank,
                owned_cells,
                overlap_cells,
                points,
            }
        })
        .collect();
    Ok(ClosedPartition { ranks, owner })
}

/// One rank's share of the mesh.
#[derive(Clone, Debug, PartialEq)]
pub struct RankLocalMesh<T> {
    pub rank: usize,
    pub bundle: MeshBundle<T>,
    /// Global id of every local point; injective.
    pub local_to_global: Vec<PointId>,
    /// Local ids of the cells this rank owns, ascending.
    pub owned_cells: Vec<PointId>,
    /// Local ids of points owned by another rank, ascending.
    pub ghost_points: Vec<PointId>,
    /// Fields migrated along with the topology, restricted to local points.
    pub fields: Vec<Field<T>>,
}

impl<T: Scalar> RankLocalMesh<T> {
    pub fn chart_size(&self) -> usize {
        self.local_to_global.len()
    }

    /// Applies a local renumbering to everything the rank holds.
    pub fn permute(&self, perm: &Permutation) -> Result<RankLocalMesh<T>> {
        let bundle = self.bundle.permute(perm)?;
        let mut local_to_global = vec![PointId(0); self.chart_size()];
        for (old, &g) in self.local_to_global.iter().enumerate() {
            local_to_global[perm.forward(old)] = g;
        }
        let relabel = |pts: &[PointId]| {
            let mut out: Vec<PointId> = pts.iter().map(|&p| perm.apply(p)).collect();
            out.sort_unstable();
            out
        };
        Ok(RankLocalMesh {
            rank: self.rank,
            bundle,
            local_to_global,
            owned_cells: relabel(&self.owned_cells),
            ghost_points: relabel(&self.ghost_points),
            fields: self
                .fields
                .iter()
                .map(|f| f.permute(perm))
                .collect::<Result<_>>()?,
        })
    }
}

/// Migrated byte volume, summed over all receiving ranks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MigrationReport {
    /// `(cone size + 1 metadata word) * INDEX_BYTES` per local point.
    pub bytes_topology: usize,
    /// Vertex coordinate values times the scalar size.
    pub bytes_coordinates: usize,
    /// Dofs of every supplied field times the scalar size.
    pub bytes_fields: usize,
    pub rank_points: Vec<usize>,
}

impl MigrationReport {
    pub fn total(&self) -> usize {
        self.bytes_topology + self.bytes_coordinates + self.bytes_fields
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Migration<T> {
    pub locals: Vec<RankLocalMesh<T>>,
    pub star_forest: StarForest,
    pub report: MigrationReport,
}

/// Orders strata as cells, vertices, then the remaining depths downwards
/// (facets before edges).
fn stratum_group(depth: usize, dim: usize) -> usize {
    if depth == dim {
        0
    } else if depth == 0 {
        1
    } else {
        2 + (dim - 1 - depth)
    }
}

/// Splits `bundle` over `nranks` ranks following `map`.
///
/// Fields are only moved when supplied; leaving `fields` empty is the
/// topology-and-coordinates path.
pub fn migrate<T: Scalar>(
    bundle: &MeshBundle<T>,
    map: &PartitionMap,
    nranks: usize,
    fields: &[Field<T>],
) -> Result<Migration<T>> {
    if nranks != map.nparts {
        return Err(Error::Partition(format!(
            "{nranks} ranks requested for a {}-way partition",
            map.nparts
        )));
    }
    let plex = &bundle.plex;
    for f in fields {
        if f.section.len() != plex.chart_size() {
            return Err(Error::SizeMismatch(format!(
                "field {:?} is laid out over {} points, chart has {}",
                f.name,
                f.section.len(),
                plex.chart_size()
            )));
        }
    }
    let closed = close_partition(plex, map)?;
    let dim = plex.dim();

    let locals: Vec<RankLocalMesh<T>> = closed
        .ranks
        .par_iter()
        .map(|rp| extract_rank(bundle, rp, &closed.owner, dim, fields))
        .collect::<Result<_>>()?;

    let global_to_local: Vec<HashMap<PointId, PointId>> = locals
        .iter()
        .map(|l| {
            l.local_to_global
                .iter()
                .enumerate()
                .map(|(i, &g)| (g, PointId(i)))
                .collect()
        })
        .collect();
    let mut leaves = Vec::with_capacity(nranks);
    for local in &locals {
        let mut rank_leaves = Vec::with_capacity(local.ghost_points.len());
        for &p in &local.ghost_points {
            let g = local.local_to_global[p.0];
            let owner_rank = closed.owner[g.0];
            let owner_point = global_to_local[owner_rank][&g];
            rank_leaves.push(Leaf {
                local: p,
                owner_rank,
                owner_point,
            });
        }
        leaves.push(rank_leaves);
    }

    let mut report = MigrationReport::default();
    for local in &locals {
        let lp = &local.bundle.plex;
        report.rank_points.push(lp.chart_size());
        report.bytes_topology += (0..lp.chart_size())
            .map(|p| (lp.cone_unchecked(PointId(p)).len() + 1) * INDEX_BYTES)
            .sum::<usize>();
        report.bytes_coordinates += local.bundle.coordinates.values.len() * T::BYTES;
        report.bytes_fields += local
            .fields
            .iter()
            .map(|f| f.values.len() * T::BYTES)
            .sum::<usize>();
    }

    Ok(Migration {
        locals,
        star_forest: StarForest::new(leaves),
        report,
    })
}

fn extract_rank<T: Scalar>(
    bundle: &MeshBundle<T>,
    rp: &RankPoints,
    owner: &[usize],
    dim: usize,
    fields: &[Field<T>],
) -> Result<RankLocalMesh<T>> {
    let plex = &bundle.plex;
    let mut points = rp.points.clone();
    points.sort_by_key(|&p| (stratum_group(plex.depth(p), dim), p));
    let local_of: HashMap<PointId, PointId> = points
        .iter()
        .enumerate()
        .map(|(i, &g)| (g, PointId(i)))
        .collect();
    let to_local = |g: PointId| local_of.get(&g).copied();

    let cones = points
        .iter()
        .map(|&g| {
            plex.cone_unchecked(g)
                .iter()
                .map(|&q| {
                    to_local(q).ok_or_else(|| {
                        Error::Distribution(format!(
                            "cone point {q} of {g} missing on rank {}",
                            rp.rank
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let local_plex = Plex::from_cones(cones)?;

    let local_bundle = MeshBundle {
        plex: local_plex,
        coordinates: bundle.coordinates.restrict(&points),
        region: bundle.region.map_points(to_local),
        boundary: bundle.boundary.map_points(to_local),
    };
    let mut owned_cells: Vec<PointId> = rp.owned_cells.iter().map(|&c| local_of[&c]).collect();
    owned_cells.sort_unstable();
    let ghost_points = points
        .iter()
        .enumerate()
        .filter(|(_, g)| owner[g.0] != rp.rank)
        .map(|(i, _)| PointId(i))
        .collect();
    Ok(RankLocalMesh {
        rank: rp.rank,
        bundle: local_bundle,
        local_to_global: points.clone(),
        owned_cells,
        ghost_points,
        fields: fields.iter().map(|f| f.restrict(&points)).collect(),
    })
}

/// Local layout with every ghost dof after every owned dof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halo {
    /// Owned dofs occupy `[0, n_owned)` of the permuted section.
    pub n_owned: usize,
    pub n_owned_points: usize,
    /// Ghost leaves in receive order (owner rank, owner point), with local
    /// ids after the permutation.
    pub receives: Vec<Leaf>,
    /// Dof range holding the received values.
    pub ghost_dofs: Range<usize>,
}

/// Computes the local permutation that puts owned points first (keeping
/// their relative order) and ghosts last, ordered by owner rank and the
/// owner's point id.
pub fn build_halo<T: Scalar>(
    local: &RankLocalMesh<T>,
    sf: &StarForest,
    section: &Section,
) -> Result<(Halo, Permutation)> {
    let n = local.chart_size();
    if section.len() != n {
        return Err(Error::SizeMismatch(format!(
            "section over {} points on a rank with {n} points",
            section.len()
        )));
    }
    if local.rank >= sf.nranks() {
        return Err(Error::SizeMismatch(format!(
            "star forest has {} ranks, local mesh is rank {}",
            sf.nranks(),
            local.rank
        )));
    }
    let mut ghosts: Vec<Leaf> = sf.leaves(local.rank).to_vec();
    let mut is_ghost = vec![false; n];
    for leaf in &ghosts {
        if leaf.local.0 >= n {
            return Err(Error::SizeMismatch(format!(
                "leaf {} outside a chart of {n} points",
                leaf.local
            )));
        }
        is_ghost[leaf.local.0] = true;
    }
    ghosts.sort_by_key(|l| (l.owner_rank, l.owner_point, l.local));

    let mut order: Vec<usize> = (0..n).filter(|&p| !is_ghost[p]).collect();
    let n_owned_points = order.len();
    order.extend(ghosts.iter().map(|l| l.local.0));
    let perm = Permutation::from_inverse(order)?;

    let n_owned = (0..n)
        .filter(|&p| !is_ghost[p])
        .map(|p| section.dof(PointId(p)))
        .sum();
    let receives = ghosts
        .iter()
        .map(|l| Leaf {
            local: perm.apply(l.local),
            ..*l
        })
        .collect();
    Ok((
        Halo {
            n_owned,
            n_owned_points,
            receives,
            ghost_dofs: n_owned..section.total_size(),
        },
        perm,
    ))
}

/// Reassembles the global bundle from the owned points of every rank.
pub fn gather_to_root<T: Scalar>(
    locals: &[RankLocalMesh<T>],
    sf: &StarForest,
) -> Result<MeshBundle<T>> {
    if locals.len() != sf.nranks() {
        return Err(Error::Distribution(format!(
            "{} local meshes but {} star-forest ranks",
            locals.len(),
            sf.nranks()
        )));
    }
    for (r, local) in locals.iter().enumerate() {
        if local.rank != r {
            return Err(Error::Distribution(format!(
                "local mesh at position {r} claims rank {}",
                local.rank
            )));
        }
    }
    for (r, local) in locals.iter().enumerate() {
        for leaf in sf.leaves(r) {
            let owner = locals.get(leaf.owner_rank).ok_or_else(|| {
                Error::Distribution(format!("leaf points to missing rank {}", leaf.owner_rank))
            })?;
            if leaf.owner_rank == r {
                return Err(Error::Distribution(format!(
                    "rank {r} lists itself as owner"
                )));
            }
            if leaf.owner_point.0 >= owner.chart_size() || leaf.local.0 >= local.chart_size() {
                return Err(Error::Distribution("leaf outside chart".into()));
            }
            if sf.is_leaf(leaf.owner_rank, leaf.owner_point) {
                return Err(Error::Distribution(format!(
                    "leaf {} on rank {r} resolves to another leaf",
                    leaf.local
                )));
            }
            if local.local_to_global[leaf.local.0] != owner.local_to_global[leaf.owner_point.0] {
                return Err(Error::Distribution(format!(
                    "leaf {} on rank {r} and its root disagree on the global point",
                    leaf.local
                )));
            }
        }
    }

    let chart_size = locals
        .iter()
        .flat_map(|l| l.local_to_global.iter())
        .map(|g| g.0 + 1)
        .max()
        .unwrap_or(0);
    // (rank, local point) of each global point's owned copy
    let mut source: Vec<Option<(usize, PointId)>> = vec![None; chart_size];
    for (r, local) in locals.iter().enumerate() {
        for (p, &g) in local.local_to_global.iter().enumerate() {
            if sf.is_leaf(r, PointId(p)) {
                continue;
            }
            if let Some((other, _)) = source[g.0] {
                return Err(Error::Distribution(format!(
                    "ranks {other} and {r} both own global point {g}"
                )));
            }
            source[g.0] = Some((r, PointId(p)));
        }
    }
    let source: Vec<(usize, PointId)> = source
        .into_iter()
        .enumerate()
        .map(|(g, s)| {
            s.ok_or_else(|| Error::Distribution(format!("global point {g} has no owner")))
        })
        .collect::<Result<_>>()?;

    let cones = source
        .iter()
        .map(|&(r, p)| {
            let l = &locals[r];
            l.bundle
                .plex
                .cone_unchecked(p)
                .iter()
                .map(|q| l.local_to_global[q.0])
                .collect()
        })
        .collect();
    let plex = Plex::from_cones(cones)?;

    let section = Section::from_point_dofs(
        source
            .iter()
            .map(|&(r, p)| locals[r].bundle.coordinates.section.dof(p))
            .collect(),
    );
    let mut values = Vec::with_capacity(section.total_size());
    for &(r, p) in &source {
        values.extend_from_slice(locals[r].bundle.coordinates.point_values(p));
    }
    let name = locals.first().map_or("coordinates".to_string(), |l| {
        l.bundle.coordinates.name.clone()
    });
    let coordinates = Field::new(name, section, values)?;

    let gather_label = |pick: fn(&MeshBundle<T>) -> &Label| {
        let name = locals.first().map_or("", |l| pick(&l.bundle).name());
        let mut out = Label::new(name);
        for (g, &(r, p)) in source.iter().enumerate() {
            for v in pick(&locals[r].bundle).values_of(p) {
                out.set(PointId(g), v);
            }
        }
        out
    };
    let region = gather_label(|b| &b.region);
    let boundary = gather_label(|b| &b.boundary);

    Ok(MeshBundle {
        plex,
        coordinates,
        region,
        boundary,
    })
}
