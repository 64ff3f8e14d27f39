mod common;

use std::collections::BTreeSet;

use common::corpus_bundles;
use plexmesh::canonical::CanonicalMesh;
use plexmesh::corpus;
use plexmesh::distribute::{build_halo, gather_to_root, migrate, StarForest};
use plexmesh::io::raw_to_bundle;
use plexmesh::partition::{build_dual_graph, partition_cells, PartitionMap, PartitionMethod};
use plexmesh::{Field, MeshBundle, PointId, Section};

const NPARTS: [usize; 5] = [1, 2, 3, 4, 8];

fn split(b: &MeshBundle, nparts: usize, method: PartitionMethod) -> PartitionMap {
    let g = build_dual_graph(&b.plex).unwrap();
    partition_cells(&g, nparts, method, Some(&b.cell_centroids())).unwrap()
}

fn p1_fields(b: &MeshBundle, k: usize) -> Vec<Field> {
    let mut dofs = vec![0; b.plex.dim() + 1];
    dofs[0] = 1;
    let section = Section::from_depth_dofs(&b.plex, &dofs).unwrap();
    (0..k)
        .map(|i| {
            let n = section.total_size();
            let values = (0..n).map(|j| (i * n + j) as f64).collect();
            Field::new(format!("f{i}"), section.clone(), values).unwrap()
        })
        .collect()
}

#[test]
fn owned_cells_partition_and_gather_restores() {
    for (name, _, b) in corpus_bundles() {
        for &nparts in &NPARTS {
            if nparts > b.plex.num_cells() {
                continue;
            }
            for method in [
                PartitionMethod::GreedyBfs,
                PartitionMethod::CoordinateBisection,
            ] {
                let map = split(&b, nparts, method);
                let m = migrate(&b, &map, nparts, &[]).unwrap();
                let mut owned = Vec::new();
                for (r, local) in m.locals.iter().enumerate() {
                    assert_eq!(local.rank, r);
                    owned.extend(
                        local
                            .owned_cells
                            .iter()
                            .map(|&c| local.local_to_global[c.0]),
                    );
                }
                owned.sort_unstable();
                assert_eq!(owned, b.plex.cells(), "{name} {nparts} {method}");

                // every leaf resolves to a point its owner does not receive
                for (r, local) in m.locals.iter().enumerate() {
                    for leaf in m.star_forest.leaves(r) {
                        assert_ne!(leaf.owner_rank, r);
                        assert!(!m.star_forest.is_leaf(leaf.owner_rank, leaf.owner_point));
                        let owner = &m.locals[leaf.owner_rank];
                        assert_eq!(
                            local.local_to_global[leaf.local.0],
                            owner.local_to_global[leaf.owner_point.0]
                        );
                    }
                }
                let back = gather_to_root(&m.locals, &m.star_forest).unwrap();
                assert_eq!(
                    CanonicalMesh::of(&back),
                    CanonicalMesh::of(&b),
                    "{name} {nparts}"
                );
                assert_eq!(back, b, "{name} {nparts}");
            }
        }
    }
}

#[test]
fn every_global_point_has_one_owner() {
    let b = raw_to_bundle(&corpus::tet_cube::<f64>(2)).unwrap();
    let m = migrate(&b, &split(&b, 4, PartitionMethod::GreedyBfs), 4, &[]).unwrap();
    let mut owners = vec![0usize; b.plex.chart_size()];
    for (r, local) in m.locals.iter().enumerate() {
        let ghosts: BTreeSet<PointId> = local.ghost_points.iter().copied().collect();
        for (i, g) in local.local_to_global.iter().enumerate() {
            if !ghosts.contains(&PointId(i)) {
                owners[g.0] += 1;
            }
        }
        assert_eq!(ghosts.len(), m.star_forest.leaves(r).len());
    }
    assert!(owners.iter().all(|&c| c == 1));
}

#[test]
fn halo_puts_receives_last() {
    let b = raw_to_bundle(&corpus::triangle_grid::<f64>(4, 4)).unwrap();
    for &nparts in &NPARTS {
        let m = migrate(
            &b,
            &split(&b, nparts, PartitionMethod::GreedyBfs),
            nparts,
            &[],
        )
        .unwrap();
        for local in &m.locals {
            let section = Section::from_depth_dofs(&local.bundle.plex, &[1, 1, 0]).unwrap();
            let (halo, perm) = build_halo(local, &m.star_forest, &section).unwrap();
            let moved = section.permute(&perm).unwrap();
            let ghosts: BTreeSet<PointId> = halo.receives.iter().map(|l| l.local).collect();
            for p in 0..local.chart_size() {
                let p = PointId(p);
                let r = moved.range(p);
                if ghosts.contains(&p) {
                    assert!(r.is_empty() || r.start >= halo.n_owned);
                } else {
                    assert!(r.end <= halo.n_owned);
                }
            }
            assert_eq!(halo.ghost_dofs, halo.n_owned..moved.total_size());
            let keys: Vec<_> = halo
                .receives
                .iter()
                .map(|l| (l.owner_rank, l.owner_point))
                .collect();
            assert!(keys.windows(2).all(|w| w[0] < w[1]));
            let locals: Vec<usize> = halo.receives.iter().map(|l| l.local.0).collect();
            let expected: Vec<usize> = (halo.n_owned_points..local.chart_size()).collect();
            assert_eq!(locals, expected);

            // applying the layout and rebuilding changes nothing
            let relaid = local.permute(&perm).unwrap();
            let sf = m.star_forest.relabel_rank(local.rank, &perm);
            let (again, perm2) = build_halo(&relaid, &sf, &moved).unwrap();
            assert!(perm2.is_identity());
            assert_eq!(again, halo);
        }
    }
}

#[test]
fn byte_counts_match_recount() {
    for (name, _, b) in corpus_bundles() {
        let nparts = b.plex.num_cells().min(3);
        let map = split(&b, nparts, PartitionMethod::CoordinateBisection);
        let fields = p1_fields(&b, 2);
        let m = migrate(&b, &map, nparts, &fields).unwrap();
        let (mut topo, mut coords, mut vals) = (0, 0, 0);
        for local in &m.locals {
            for &g in &local.local_to_global {
                topo += (b.plex.cone(g).unwrap().len() + 1) * 8;
                if b.plex.depth(g) == 0 {
                    coords += b.dim() * 8;
                    vals += 2 * 8;
                }
            }
        }
        let r = &m.report;
        assert_eq!(
            (r.bytes_topology, r.bytes_coordinates, r.bytes_fields),
            (topo, coords, vals),
            "{name}"
        );
        assert_eq!(r.total(), topo + coords + vals);

        let bare = migrate(&b, &map, nparts, &[]).unwrap().report;
        assert_eq!(bare.bytes_fields, 0);
        assert_eq!(bare.bytes_topology, r.bytes_topology);
        assert_eq!(bare.bytes_coordinates, r.bytes_coordinates);
    }
}

#[test]
fn field_values_follow_points() {
    let b = raw_to_bundle(&corpus::tet_cube::<f64>(2)).unwrap();
    let fields = p1_fields(&b, 3);
    let m = migrate(&b, &split(&b, 4, PartitionMethod::GreedyBfs), 4, &fields).unwrap();
    for local in &m.locals {
        for (f, lf) in fields.iter().zip(&local.fields) {
            for (i, &g) in local.local_to_global.iter().enumerate() {
                assert_eq!(lf.point_values(PointId(i)), f.point_values(g));
            }
        }
    }
}

#[test]
fn sidecar_round_trips_through_json() {
    let b = raw_to_bundle(&corpus::triangle_grid::<f64>(4, 4)).unwrap();
    let m = migrate(&b, &split(&b, 3, PartitionMethod::GreedyBfs), 3, &[]).unwrap();
    let text = serde_json::to_string(&m.star_forest.to_sidecar()).unwrap();
    let back = StarForest::from_sidecar(serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, m.star_forest);
}

#[test]
fn mismatched_rank_count_is_rejected() {
    let b = raw_to_bundle(&corpus::two_triangles::<f64>()).unwrap();
    let map = split(&b, 2, PartitionMethod::GreedyBfs);
    assert!(migrate(&b, &map, 3, &[]).is_err());
}
