mod common;

use common::{bandwidth_brute_force, corpus_bundles, p1_pairs_brute_force, random_permutation};
use plexmesh::corpus;
use plexmesh::io::raw_to_bundle;
use plexmesh::renumber::{apply_permutation, rcm_ordering};
use plexmesh::sparsity::p1_pattern;
use plexmesh::{Permutation, PointId, Section};

/// Bandwidth of the raw P1 pairs when vertex `v` is numbered by the new
/// position of its plex point among all vertices.
fn bandwidth_under(
    raw_cells: &[Vec<usize>],
    ncells: usize,
    nv: usize,
    perm: &Permutation,
) -> usize {
    let mut images: Vec<(usize, usize)> = (0..nv).map(|v| (perm.forward(ncells + v), v)).collect();
    images.sort();
    let mut position = vec![0; nv];
    for (rank, (_, v)) in images.into_iter().enumerate() {
        position[v] = rank;
    }
    bandwidth_brute_force(&p1_pairs_brute_force(raw_cells), &position)
}

#[test]
fn path_in_order_keeps_bandwidth_one() {
    let raw = corpus::line_path::<f64>(&[0, 1, 2, 3]);
    let b = raw_to_bundle(&raw).unwrap();
    let perm = rcm_ordering(&b.plex);
    assert_eq!(bandwidth_under(&raw.cells, 3, 4, &perm), 1);
    assert_eq!(
        p1_pattern(&apply_permutation(&b, &perm).unwrap()).bandwidth(),
        1
    );
}

#[test]
fn rcm_restores_scrambled_paths() {
    for seed in 0..10 {
        let order = random_permutation(8, seed);
        let raw = corpus::line_path::<f64>(&order);
        let b = raw_to_bundle(&raw).unwrap();
        let before = p1_pattern(&b).bandwidth();
        let perm = rcm_ordering(&b.plex);
        assert_eq!(
            bandwidth_under(&raw.cells, 7, 8, &perm),
            1,
            "seed {seed}, before {before}"
        );
    }
}

#[test]
fn rcm_beats_random_on_10x10_grid() {
    let raw = corpus::triangle_grid::<f64>(10, 10);
    let b = raw_to_bundle(&raw).unwrap();
    let (nc, nv) = (raw.cells.len(), raw.num_vertices());
    let rcm = bandwidth_under(&raw.cells, nc, nv, &rcm_ordering(&b.plex));
    for seed in 0..20 {
        let random =
            Permutation::from_forward(random_permutation(b.plex.chart_size(), seed)).unwrap();
        assert!(
            rcm <= bandwidth_under(&raw.cells, nc, nv, &random),
            "seed {seed}"
        );
    }
    assert!(
        rcm <= bandwidth_under(
            &raw.cells,
            nc,
            nv,
            &Permutation::identity(b.plex.chart_size())
        )
    );
}

#[test]
fn rcm_keeps_strata_in_place() {
    for (name, _, b) in corpus_bundles() {
        let perm = rcm_ordering(&b.plex);
        assert_eq!(perm, rcm_ordering(&b.plex), "{name}: not deterministic");
        for d in 0..=b.plex.dim() {
            for &p in b.plex.depth_stratum(d) {
                assert_eq!(b.plex.depth(perm.apply(p)), d, "{name}");
            }
        }
    }
}

#[test]
fn cells_follow_their_lowest_vertex() {
    let b = raw_to_bundle(&corpus::triangle_grid::<f64>(6, 6)).unwrap();
    let perm = rcm_ordering(&b.plex);
    let moved = apply_permutation(&b, &perm).unwrap();
    let keys: Vec<PointId> = moved
        .plex
        .cells()
        .iter()
        .map(|&c| moved.plex.closure_vertices(c)[0])
        .collect();
    assert!(keys.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn identity_and_random_relabelling() {
    for (name, _, b) in corpus_bundles() {
        let n = b.plex.chart_size();
        assert_eq!(
            apply_permutation(&b, &Permutation::identity(n)).unwrap(),
            b,
            "{name}"
        );
        for seed in 0..3 {
            let perm = Permutation::from_forward(random_permutation(n, seed)).unwrap();
            let moved = apply_permutation(&b, &perm).unwrap();
            assert_eq!(
                moved.plex.depth_stratum_sizes(),
                b.plex.depth_stratum_sizes()
            );
            for p in b.plex.vertices() {
                assert_eq!(
                    moved.vertex_coordinates(perm.apply(*p)),
                    b.vertex_coordinates(*p)
                );
            }
            assert_eq!(moved.boundary.marker_counts(), b.boundary.marker_counts());
        }
        let bad = Permutation::identity(n + 1);
        assert!(apply_permutation(&b, &bad).is_err());
    }
}

#[test]
fn tet_closure_survives_vertex_relabelling() {
    let b = raw_to_bundle(&corpus::single_simplex::<f64>(3)).unwrap();
    for seed in 0..24 {
        let mut forward: Vec<usize> = (0..15).collect();
        let shuffled = random_permutation(4, seed);
        for (i, &j) in shuffled.iter().enumerate() {
            forward[1 + i] = 1 + j;
        }
        let perm = Permutation::from_forward(forward).unwrap();
        let moved = apply_permutation(&b, &perm).unwrap();
        assert_eq!(moved.plex.closure(PointId(0)).unwrap().len(), 15);
    }
}

#[test]
fn section_size_is_permutation_invariant() {
    let b = raw_to_bundle(&corpus::single_simplex::<f64>(3)).unwrap();
    let s = Section::from_depth_dofs(&b.plex, &[1, 0, 0, 0]).unwrap();
    for seed in 0..100 {
        let perm = Permutation::from_forward(random_permutation(15, seed)).unwrap();
        let moved = s.permute(&perm).unwrap();
        assert_eq!(moved.total_size(), 4);
        let mut last = None;
        for p in 0..15 {
            if moved.dof(PointId(p)) > 0 {
                let off = moved.offset(PointId(p));
                assert!(last.is_none_or(|l| l < off));
                last = Some(off);
            }
        }
    }
}

#[test]
fn per_depth_layout_restricts_back() {
    for (_, _, b) in corpus_bundles() {
        let dofs: Vec<usize> = (0..=b.plex.dim()).map(|d| d + 1).collect();
        let s = Section::from_depth_dofs(&b.plex, &dofs).unwrap();
        for (d, &k) in dofs.iter().enumerate() {
            let r = s.restrict(b.plex.depth_stratum(d));
            assert!(r.dofs().iter().all(|&x| x == k));
        }
    }
}
