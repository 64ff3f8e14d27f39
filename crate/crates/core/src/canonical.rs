//! Numbering-independent description of a mesh bundle, for comparing meshes
//! that differ only by a relabelling of their points.

use std::collections::BTreeMap;

use crate::io::MeshBundle;
use crate::{Label, PointId, Scalar};

/// Coordinates as exact bit patterns.
pub type VertexKey = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalMesh {
    pub dim: usize,
    pub stratum_sizes: Vec<usize>,
    /// Sorted multiset of vertex coordinates.
    pub vertices: Vec<VertexKey>,
    /// Sorted multiset of cells, each the sorted list of its vertex keys.
    pub cells: Vec<Vec<VertexKey>>,
    /// Sorted `(marker, entity vertices)` pairs for region and boundary.
    pub region: Vec<(i64, Vec<VertexKey>)>,
    pub boundary: Vec<(i64, Vec<VertexKey>)>,
}

impl CanonicalMesh {
    pub fn of<T: Scalar>(bundle: &MeshBundle<T>) -> CanonicalMesh {
        let plex = &bundle.plex;
        let key = |v: PointId| -> VertexKey {
            bundle
                .vertex_coordinates(v)
                .iter()
                .map(|x| x.to_bits_u64())
                .collect()
        };
        let entity = |p: PointId| -> Vec<VertexKey> {
            let mut ks: Vec<VertexKey> = plex.closure_vertices(p).into_iter().map(key).collect();
            ks.sort_unstable();
            ks
        };
        let labelled = |label: &Label| {
            let mut out: Vec<(i64, Vec<VertexKey>)> = label
                .entries()
                .into_iter()
                .map(|(p, v)| (v, entity(p)))
                .collect();
            out.sort_unstable();
            out
        };
        let mut vertices: Vec<VertexKey> = plex.vertices().iter().map(|&v| key(v)).collect();
        vertices.sort_unstable();
        let mut cells: Vec<Vec<VertexKey>> = plex.cells().iter().map(|&c| entity(c)).collect();
        cells.sort_unstable();
        CanonicalMesh {
            dim: plex.dim(),
            stratum_sizes: plex.depth_stratum_sizes(),
            vertices,
            cells,
            region: labelled(&bundle.region),
            boundary: labelled(&bundle.boundary),
        }
    }

    /// Marker multiset of a label as `marker -> count`.
    pub fn marker_counts(entries: &[(i64, Vec<VertexKey>)]) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (m, _) in entries {
            *out.entry(*m).or_insert(0) += 1;
        }
        out
    }
}
