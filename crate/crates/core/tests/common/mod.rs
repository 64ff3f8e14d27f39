//! Independent oracles and fixtures shared by the integration tests. Nothing
//! here goes through the plex: every check works from raw cell-vertex lists.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;

use plexmesh::io::{raw_to_bundle, RawMesh};
use plexmesh::{corpus, MeshBundle};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data")
}

pub fn corpus_bundles() -> Vec<(&'static str, RawMesh<f64>, MeshBundle)> {
    corpus::standard::<f64>()
        .into_iter()
        .map(|(name, raw)| {
            let b = raw_to_bundle(&raw).unwrap();
            (name, raw, b)
        })
        .collect()
}

pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    v
}

/// All sub-simplices with `k + 1` vertices, as sorted vertex tuples.
pub fn faces_of(cells: &[Vec<usize>], k: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for cell in cells {
        let m = cell.len();
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize == k + 1 {
                let mut f: Vec<usize> = (0..m)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| cell[i])
                    .collect();
                f.sort_unstable();
                out.insert(f);
            }
        }
    }
    out
}

/// Pairs of cells sharing `dim` vertices (a facet), by pairwise comparison.
pub fn dual_edges_brute_force(cells: &[Vec<usize>]) -> BTreeSet<(usize, usize)> {
    let sets: Vec<HashSet<usize>> = cells.iter().map(|c| c.iter().copied().collect()).collect();
    let mut out = BTreeSet::new();
    for a in 0..cells.len() {
        for b in a + 1..cells.len() {
            if sets[a].intersection(&sets[b]).count() + 1 == cells[a].len() {
                out.insert((a, b));
            }
        }
    }
    out
}

/// Vertex pairs sharing a cell, including `(i, i)` for referenced vertices.
pub fn p1_pairs_brute_force(cells: &[Vec<usize>]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for cell in cells {
        for &a in cell {
            for &b in cell {
                out.insert((a, b));
            }
        }
    }
    out
}

/// Max |i - j| over pairs after relabelling vertex `v` to `order_pos[v]`.
pub fn bandwidth_brute_force(pairs: &BTreeSet<(usize, usize)>, position: &[usize]) -> usize {
    pairs
        .iter()
        .map(|&(a, b)| position[a].abs_diff(position[b]))
        .max()
        .unwrap_or(0)
}
