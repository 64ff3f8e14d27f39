//! Mesh topology as a layered directed acyclic graph.
//!
//! Every topological entity (cell, facet, edge, vertex) is a *point* in a
//! single contiguous chart. The cone of a point lists the points one level
//! down that it covers; the support is the reverse relation. Depth counts
//! the longest cone path down to a vertex, height the longest support path up
//! to a cell.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Index of a point in a plex chart.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct PointId(pub usize);

impl PointId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for PointId {
    fn from(value: usize) -> Self {
        PointId(value)
    }
}

/// Faces of a tetrahedron `(v0, v1, v2, v3)` in cone order. Face `k` is
/// opposite local vertex `TET_FACE_OPPOSITE[k]`.
const TET_FACES: [[usize; 3]; 4] = [[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]];
const TET_FACE_OPPOSITE: [usize; 4] = [3, 1, 2, 0];

/// Edges of a triangle `(v0, v1, v2)` in cone order; edge `k` is opposite
/// local vertex `k`.
const TRI_EDGES: [[usize; 2]; 3] = [[1, 2], [0, 2], [0, 1]];

/// Per-point depth and height together with the points of each stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strata {
    pub depth: Vec<usize>,
    pub height: Vec<usize>,
    /// `depth_strata[d]` holds the points at depth `d`, ascending.
    pub depth_strata: Vec<Vec<PointId>>,
    /// `height_strata[h]` holds the points at height `h`, ascending.
    pub height_strata: Vec<Vec<PointId>>,
}

/// Layered DAG over mesh points with compressed cone and support storage.
///
/// Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plex {
    cone_offsets: Vec<usize>,
    cone_points: Vec<PointId>,
    support_offsets: Vec<usize>,
    support_points: Vec<PointId>,
    strata: Strata,
}

impl Plex {
    /// Builds a plex from explicit cones, one list per point.
    ///
    /// Supports are derived and sorted ascending. Rejects out-of-chart
    /// references, repeated cone entries and cycles.
    pub fn from_cones(cones: Vec<Vec<PointId>>) -> Result<Plex> {
        let chart_size = cones.len();
        let mut cone_offsets = Vec::with_capacity(chart_size + 1);
        let mut cone_points = Vec::new();
        let mut support_counts = vec![0usize; chart_size];
        cone_offsets.push(0);
        for (p, cone) in cones.iter().enumerate() {
            for (i, &q) in cone.iter().enumerate() {
                if q.0 >= chart_size {
                    return Err(Error::PointOutOfChart {
                        point: q,
                        chart_size,
                    });
                }
                if q.0 == p {
                    return Err(Error::Cycle);
                }
                if cone[..i].contains(&q) {
                    return Err(Error::InvalidMesh(format!(
                        "point {q} repeated in cone of {p}"
                    )));
                }
                support_counts[q.0] += 1;
            }
            cone_points.extend_from_slice(cone);
            cone_offsets.push(cone_points.len());
        }

        let mut support_offsets = Vec::with_capacity(chart_size + 1);
        support_offsets.push(0);
        for &c in &support_counts {
            let last = *support_offsets.last().unwrap();
            support_offsets.push(last + c);
        }
        let mut fill = support_offsets[..chart_size].to_vec();
        let mut support_points = vec![PointId(0); cone_points.len()];
        // Visiting p ascending leaves every support list sorted.
        for (p, cone) in cones.iter().enumerate() {
            for &q in cone {
                support_points[fill[q.0]] = PointId(p);
                fill[q.0] += 1;
            }
        }

        let mut plex = Plex {
            cone_offsets,
            cone_points,
            support_offsets,
            support_points,
            strata: Strata {
                depth: Vec::new(),
                height: Vec::new(),
                depth_strata: Vec::new(),
                height_strata: Vec::new(),
            },
        };
        plex.strata = stratify(&plex)?;
        Ok(plex)
    }

    /// Builds an interpolated simplicial plex from cell-vertex lists.
    ///
    /// Numbering: cells `[0, ncells)`, then vertices, then facets, then
    /// edges (the last two only exist for `dim >= 2` / `dim == 3`).
    /// Intermediate entities are created in first-encounter order while
    /// walking the cells, and deduplicated on their sorted vertex tuple.
    pub fn from_cells(cells: &[Vec<usize>], num_vertices: usize, dim: usize) -> Result<Plex> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidMesh(format!("unsupported dimension {dim}")));
        }
        if cells.is_empty() {
            return Err(Error::InvalidMesh("no cells".into()));
        }
        let arity = cells[0].len();
        for (c, cell) in cells.iter().enumerate() {
            if cell.len() != arity {
                return Err(Error::InvalidMesh(format!(
                    "mixed cell arities: cell 0 has {arity} vertices, cell {c} has {}",
                    cell.len()
                )));
            }
            for &v in cell {
                if v >= num_vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        num_vertices,
                    });
                }
            }
            let mut sorted = cell.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cell.len() {
                return Err(Error::InvalidMesh(format!("cell {c} repeats a vertex")));
            }
        }
        if arity != dim + 1 {
            return Err(Error::InvalidMesh(format!(
                "cells with {arity} vertices are not {dim}-simplices"
            )));
        }

        let ncells = cells.len();
        let vertex_point = |v: usize| PointId(ncells + v);

        // Ordered vertex tuples of the interpolated entities.
        let mut facets: Vec<[usize; 3]> = Vec::new();
        let mut edges: Vec<[usize; 2]> = Vec::new();
        let mut facet_index: HashMap<[usize; 3], usize> = HashMap::new();
        let mut edge_index: HashMap<[usize; 2], usize> = HashMap::new();
        let mut cell_cones_local: Vec<Vec<usize>> = Vec::with_capacity(ncells);
        let mut facet_cones_local: Vec<[usize; 3]> = Vec::new();

        let mut intern_edge = |a: usize, b: usize, edges: &mut Vec<[usize; 2]>| -> usize {
            let key = if a < b { [a, b] } else { [b, a] };
            *edge_index.entry(key).or_insert_with(|| {
                edges.push(key);
                edges.len() - 1
            })
        };

        for cell in cells {
            match dim {
                1 => {}
                2 => {
                    let cone = TRI_EDGES
                        .iter()
                        .map(|e| intern_edge(cell[e[0]], cell[e[1]], &mut edges))
                        .collect();
                    cell_cones_local.push(cone);
                }
                _ => {
                    let mut cone = Vec::with_capacity(4);
                    for face in TET_FACES {
                        let tuple = [cell[face[0]], cell[face[1]], cell[face[2]]];
                        let mut key = tuple;
                        key.sort_unstable();
                        let f = match facet_index.get(&key) {
                            Some(&f) => f,
                            None => {
                                let f = facets.len();
                                facets.push(tuple);
                                facet_index.insert(key, f);
                                let mut fcone = [0usize; 3];
                                for (k, e) in TRI_EDGES.iter().enumerate() {
                                    fcone[k] = intern_edge(tuple[e[0]], tuple[e[1]], &mut edges);
                                }
                                facet_cones_local.push(fcone);
                                f
                            }
                        };
                        cone.push(f);
                    }
                    cell_cones_local.push(cone);
                }
            }
        }

        let facet_base = ncells + num_vertices;
        let (nfacets, edge_base) = match dim {
            1 => (0, facet_base),
            2 => (0, facet_base),
            _ => (facets.len(), facet_base + facets.len()),
        };
        let chart_size = edge_base + if dim >= 2 { edges.len() } else { 0 };

        let mut cones: Vec<Vec<PointId>> = Vec::with_capacity(chart_size);
        for (c, cell) in cells.iter().enumerate() {
            let cone = match dim {
                1 => cell.iter().map(|&v| vertex_point(v)).collect(),
                2 => cell_cones_local[c]
                    .iter()
                    .map(|&e| PointId(edge_base + e))
                    .collect(),
                _ => cell_cones_local[c]
                    .iter()
                    .map(|&f| PointId(facet_base + f))
                    .collect(),
            };
            cones.push(cone);
        }
        cones.extend((0..num_vertices).map(|_| Vec::new()));
        for fcone in facet_cones_local.iter().take(nfacets) {
            cones.push(fcone.iter().map(|&e| PointId(edge_base + e)).collect());
        }
        if dim >= 2 {
            for e in &edges {
                cones.push(vec![vertex_point(e[0]), vertex_point(e[1])]);
            }
        }
        debug_assert_eq!(cones.len(), chart_size);
        Plex::from_cones(cones)
    }

    pub fn chart_size(&self) -> usize {
        self.cone_offsets.len() - 1
    }

    /// Topological dimension: the largest depth of any point.
    pub fn dim(&self) -> usize {
        self.strata.depth_strata.len().saturating_sub(1)
    }

    pub fn check_point(&self, p: PointId) -> Result<()> {
        if p.0 < self.chart_size() {
            Ok(())
        } else {
            Err(Error::PointOutOfChart {
                point: p,
                chart_size: self.chart_size(),
            })
        }
    }

    pub fn cone(&self, p: PointId) -> Result<&[PointId]> {
        self.check_point(p)?;
        Ok(self.cone_unchecked(p))
    }

    pub fn support(&self, p: PointId) -> Result<&[PointId]> {
        self.check_point(p)?;
        Ok(self.support_unchecked(p))
    }

    #[inline]
    pub(crate) fn cone_unchecked(&self, p: PointId) -> &[PointId] {
        &self.cone_points[self.cone_offsets[p.0]..self.cone_offsets[p.0 + 1]]
    }

    #[inline]
    pub(crate) fn support_unchecked(&self, p: PointId) -> &[PointId] {
        &self.support_points[self.support_offsets[p.0]..self.support_offsets[p.0 + 1]]
    }

    /// `p` followed by everything reachable through cones, breadth first,
    /// each level sorted ascending.
    pub fn closure(&self, p: PointId) -> Result<Vec<PointId>> {
        self.check_point(p)?;
        Ok(self.traverse(p, |q| self.cone_unchecked(q)))
    }

    /// `p` followed by everything reachable through supports, breadth first,
    /// each level sorted ascending.
    pub fn star(&self, p: PointId) -> Result<Vec<PointId>> {
        self.check_point(p)?;
        Ok(self.traverse(p, |q| self.support_unchecked(q)))
    }

    fn traverse<'a, F>(&'a self, p: PointId, next: F) -> Vec<PointId>
    where
        F: Fn(PointId) -> &'a [PointId],
    {
        let mut out = vec![p];
        let mut level_start = 0;
        while level_start < out.len() {
            let level_end = out.len();
            let mut level: Vec<PointId> = out[level_start..level_end]
                .iter()
                .flat_map(|&q| next(q).iter().copied())
                .collect();
            level.sort_unstable();
            level.dedup();
            // A DAG level can still reach a point already emitted on a
            // shorter path, e.g. a vertex via two different edges.
            level.retain(|q| !out.contains(q));
            out.extend(level);
            level_start = level_end;
        }
        out
    }

    pub fn strata(&self) -> &Strata {
        &self.strata
    }

    pub fn depth(&self, p: PointId) -> usize {
        self.strata.depth[p.0]
    }

    pub fn height(&self, p: PointId) -> usize {
        self.strata.height[p.0]
    }

    pub fn depth_stratum(&self, d: usize) -> &[PointId] {
        self.strata
            .depth_strata
            .get(d)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn height_stratum(&self, h: usize) -> &[PointId] {
        self.strata
            .height_strata
            .get(h)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Top-dimensional points, ascending.
    pub fn cells(&self) -> &[PointId] {
        self.depth_stratum(self.dim())
    }

    pub fn vertices(&self) -> &[PointId] {
        self.depth_stratum(0)
    }

    pub fn num_cells(&self) -> usize {
        self.cells().len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    /// Number of points per depth, from vertices upwards.
    pub fn depth_stratum_sizes(&self) -> Vec<usize> {
        self.strata.depth_strata.iter().map(Vec::len).collect()
    }

    /// Number of points per height, from cells downwards.
    pub fn height_stratum_sizes(&self) -> Vec<usize> {
        self.strata.height_strata.iter().map(Vec::len).collect()
    }

    /// Every point satisfies `depth + height == dim`, i.e. all intermediate
    /// entities are present.
    pub fn is_interpolated(&self) -> bool {
        let dim = self.dim();
        (0..self.chart_size()).all(|p| self.strata.depth[p] + self.strata.height[p] == dim)
    }

    /// Vertices in the closure of `p`, sorted ascending.
    pub fn closure_vertices(&self, p: PointId) -> Vec<PointId> {
        let mut out = Vec::new();
        let mut stack = vec![p];
        while let Some(q) = stack.pop() {
            let cone = self.cone_unchecked(q);
            if cone.is_empty() {
                out.push(q);
            } else {
                stack.extend_from_slice(cone);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Ordered vertex tuple of a simplex point, undoing the cone layout used
    /// by [`Plex::from_cells`]. Falls back to the sorted closure vertices
    /// when the cones do not follow that layout.
    pub fn simplex_vertices(&self, p: PointId) -> Vec<PointId> {
        let cone = self.cone_unchecked(p);
        let depth = self.depth(p);
        if depth <= 1 {
            return cone.to_vec();
        }
        let verts = self.closure_vertices(p);
        let opposite: &[usize] = match (depth, cone.len(), verts.len()) {
            (2, 3, 3) => &[0, 1, 2],
            (3, 4, 4) => &TET_FACE_OPPOSITE,
            _ => return verts,
        };
        let mut ordered = vec![None; verts.len()];
        for (k, &face) in cone.iter().enumerate() {
            let face_verts = self.closure_vertices(face);
            let missing: Vec<_> = verts
                .iter()
                .filter(|v| face_verts.binary_search(v).is_err())
                .collect();
            if missing.len() != 1 {
                return verts;
            }
            ordered[opposite[k]] = Some(*missing[0]);
        }
        ordered
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .unwrap_or(verts)
    }

    /// All cones, one list per point; the input form of [`Plex::from_cones`].
    pub fn to_cones(&self) -> Vec<Vec<PointId>> {
        (0..self.chart_size())
            .map(|p| self.cone_unchecked(PointId(p)).to_vec())
            .collect()
    }
}

/// Computes depth and height of every point, rejecting cyclic cone graphs.
pub fn stratify(plex: &Plex) -> Result<Strata> {
    let n = plex.chart_size();
    // Kahn's algorithm over "p covers q" edges, seeded with vertices.
    let mut remaining: Vec<usize> = (0..n)
        .map(|p| plex.cone_unchecked(PointId(p)).len())
        .collect();
    let mut order: Vec<PointId> = (0..n).filter(|&p| remaining[p] == 0).map(PointId).collect();
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        head += 1;
        for &p in plex.support_unchecked(q) {
            remaining[p.0] -= 1;
            if remaining[p.0] == 0 {
                order.push(p);
            }
        }
    }
    if order.len() != n {
        return Err(Error::Cycle);
    }

    let mut depth = vec![0usize; n];
    for &p in &order {
        depth[p.0] = plex
            .cone_unchecked(p)
            .iter()
            .map(|q| depth[q.0] + 1)
            .max()
            .unwrap_or(0);
    }
    let mut height = vec![0usize; n];
    for &p in order.iter().rev() {
        height[p.0] = plex
            .support_unchecked(p)
            .iter()
            .map(|q| height[q.0] + 1)
            .max()
            .unwrap_or(0);
    }

    let bucket = |values: &[usize]| {
        let levels = values.iter().max().map_or(0, |m| m + 1);
        let mut strata = vec![Vec::new(); levels];
        for (p, &v) in values.iter().enumerate() {
            strata[v].push(PointId(p));
        }
        strata
    };
    Ok(Strata {
        depth_strata: bucket(&depth),
        height_strata: bucket(&height),
        depth,
        height,
    })
}

/// Named integer markers on points, e.g. Gmsh physical groups.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Label {
    name: String,
    values: BTreeMap<i64, BTreeSet<PointId>>,
}

impl Label {
    pub fn new(name: impl Into<String>) -> Self {
        Label {
            name: name.into(),
            values: BTreeMap::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Marks `p` with `value`. Returns false if it was already marked so.
    pub fn set(&mut self, p: PointId, value: i64) -> bool {
        self.values.entry(value).or_default().insert(p)
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.keys().copied()
    }

    pub fn points(&self, value: i64) -> impl Iterator<Item = PointId> + '_ {
        self.values.get(&value).into_iter().flatten().copied()
    }

    /// Values attached to `p`, ascending.
    pub fn values_of(&self, p: PointId) -> Vec<i64> {
        self.values
            .iter()
            .filter(|(_, pts)| pts.contains(&p))
            .map(|(&v, _)| v)
            .collect()
    }

    /// All `(point, value)` pairs ordered by point, then value.
    pub fn entries(&self) -> Vec<(PointId, i64)> {
        let mut out: Vec<_> = self
            .values
            .iter()
            .flat_map(|(&v, pts)| pts.iter().map(move |&p| (p, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Total number of `(point, value)` pairs.
    pub fn len(&self) -> usize {
        self.values.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Value multiset as `value -> count`.
    pub fn marker_counts(&self) -> BTreeMap<i64, usize> {
        self.values
            .iter()
            .filter(|(_, pts)| !pts.is_empty())
            .map(|(&v, pts)| (v, pts.len()))
            .collect()
    }

    /// Relabels points through `map`, dropping points it sends to `None`.
    pub fn map_points<F>(&self, mut map: F) -> Label
    where
        F: FnMut(PointId) -> Option<PointId>,
    {
        let mut out = Label::new(self.name.clone());
        for (&v, pts) in &self.values {
            for &p in pts {
                if let Some(q) = map(p) {
                    out.set(q, v);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[usize]) -> Vec<PointId> {
        v.iter().copied().map(PointId).collect()
    }

    fn tet() -> Plex {
        Plex::from_cells(&[vec![0, 1, 2, 3]], 4, 3).unwrap()
    }

    #[test]
    fn tet_matches_reference_numbering() {
        let plex = tet();
        assert_eq!(plex.chart_size(), 15);
        assert_eq!(plex.cone(PointId(0)).unwrap(), ids(&[5, 6, 7, 8]));
        let sorted_cone = |p: usize| {
            let mut c = plex.cone(PointId(p)).unwrap().to_vec();
            c.sort();
            c
        };
        assert_eq!(sorted_cone(5), ids(&[9, 10, 11]));
        assert_eq!(sorted_cone(6), ids(&[10, 12, 13]));
        assert_eq!(sorted_cone(7), ids(&[11, 13, 14]));
        assert_eq!(sorted_cone(8), ids(&[9, 12, 14]));
        let edges = [
            (9, [2, 3]),
            (10, [1, 3]),
            (11, [1, 2]),
            (12, [3, 4]),
            (13, [1, 4]),
            (14, [2, 4]),
        ];
        for (e, vs) in edges {
            assert_eq!(plex.cone(PointId(e)).unwrap(), ids(&vs), "edge {e}");
        }
        assert!(plex.cone(PointId(1)).unwrap().is_empty());
        assert_eq!(plex.support(PointId(1)).unwrap(), ids(&[10, 11, 13]));
        assert_eq!(plex.support(PointId(5)).unwrap(), ids(&[0]));
        assert!(plex.support(PointId(0)).unwrap().is_empty());
    }

    #[test]
    fn closure_and_star_order() {
        let plex = tet();
        let cl = plex.closure(PointId(0)).unwrap();
        assert_eq!(cl, ids(&[0, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 1, 2, 3, 4]));
        assert_eq!(
            plex.closure(PointId(5)).unwrap(),
            ids(&[5, 9, 10, 11, 1, 2, 3])
        );
        assert_eq!(plex.closure(PointId(2)).unwrap(), ids(&[2]));
        assert_eq!(plex.star(PointId(0)).unwrap(), ids(&[0]));
        assert_eq!(
            plex.star(PointId(1)).unwrap(),
            ids(&[1, 10, 11, 13, 5, 6, 7, 0])
        );
    }

    #[test]
    fn out_of_chart_is_rejected() {
        let plex = tet();
        for r in [
            plex.cone(PointId(15)).map(|_| ()),
            plex.support(PointId(15)).map(|_| ()),
            plex.closure(PointId(99)).map(|_| ()),
            plex.star(PointId(15)).map(|_| ()),
        ] {
            assert!(matches!(r, Err(Error::PointOutOfChart { .. })));
        }
    }

    #[test]
    fn strata_of_tet_and_segment() {
        let plex = tet();
        assert_eq!(plex.height_stratum_sizes(), vec![1, 4, 6, 4]);
        assert_eq!(plex.depth_stratum_sizes(), vec![4, 6, 4, 1]);
        assert!(plex.is_interpolated());

        let seg = Plex::from_cells(&[vec![0, 1]], 2, 1).unwrap();
        assert_eq!(seg.strata().depth, vec![1, 0, 0]);
        assert_eq!(seg.cone(PointId(0)).unwrap(), ids(&[1, 2]));
    }

    #[test]
    fn two_triangles_share_one_edge() {
        let plex = Plex::from_cells(&[vec![0, 1, 2], vec![0, 2, 3]], 4, 2).unwrap();
        assert_eq!(plex.chart_size(), 11);
        assert_eq!(plex.height_stratum_sizes(), vec![2, 5, 4]);
        let shared: Vec<_> = plex
            .height_stratum(1)
            .iter()
            .filter(|&&e| plex.support(e).unwrap().len() == 2)
            .collect();
        assert_eq!(shared.len(), 1);
        let star = plex.star(*shared[0]).unwrap();
        assert!(star.contains(&PointId(0)) && star.contains(&PointId(1)));
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            Plex::from_cells(&[vec![0, 1, 5]], 3, 2),
            Err(Error::VertexOutOfRange { vertex: 5, .. })
        ));
        assert!(Plex::from_cells(&[vec![0, 1, 2], vec![0, 1]], 3, 2).is_err());
        assert!(Plex::from_cells(&[vec![0, 1, 2]], 3, 3).is_err());
        assert!(Plex::from_cells(&[], 3, 2).is_err());
        assert!(Plex::from_cells(&[vec![0, 0, 1]], 3, 2).is_err());
    }

    #[test]
    fn cycle_is_rejected() {
        let cones = vec![ids(&[1]), ids(&[2]), ids(&[0])];
        assert!(matches!(Plex::from_cones(cones), Err(Error::Cycle)));
    }

    #[test]
    fn simplex_vertices_recovers_input_order() {
        let plex = Plex::from_cells(&[vec![3, 1, 0, 2], vec![1, 2, 3, 4]], 5, 3).unwrap();
        let v = |i: usize| PointId(2 + i);
        assert_eq!(
            plex.simplex_vertices(PointId(0)),
            vec![v(3), v(1), v(0), v(2)]
        );
        assert_eq!(
            plex.simplex_vertices(PointId(1)),
            vec![v(1), v(2), v(3), v(4)]
        );
        let tri = Plex::from_cells(&[vec![2, 0, 1]], 3, 2).unwrap();
        assert_eq!(tri.simplex_vertices(PointId(0)), ids(&[3, 1, 2]));
    }

    #[test]
    fn unreferenced_vertex_breaks_interpolation() {
        let plex = Plex::from_cells(&[vec![0, 1, 2]], 4, 2).unwrap();
        assert!(!plex.is_interpolated());
    }

    #[test]
    fn label_basics() {
        let mut label = Label::new("boundary");
        assert!(label.set(PointId(3), 1));
        assert!(!label.set(PointId(3), 1));
        label.set(PointId(2), 1);
        label.set(PointId(2), 4);
        assert_eq!(label.len(), 3);
        assert_eq!(label.values_of(PointId(2)), vec![1, 4]);
        assert_eq!(
            label.entries(),
            vec![(PointId(2), 1), (PointId(2), 4), (PointId(3), 1)]
        );
        let shifted = label.map_points(|p| (p.0 != 3).then_some(PointId(p.0 + 10)));
        assert_eq!(shifted.entries(), vec![(PointId(12), 1), (PointId(12), 4)]);
    }
}
