mod common;

use common::{corpus_bundles, p1_pairs_brute_force, random_permutation};
use plexmesh::corpus;
use plexmesh::io::raw_to_bundle;
use plexmesh::renumber::apply_permutation;
use plexmesh::sparsity::{p1_pattern, CsrPattern};
use plexmesh::Permutation;

fn recount_bandwidth_profile(p: &CsrPattern) -> (usize, usize) {
    let mut bw = 0;
    let mut profile = 0;
    for (i, j) in p.entries() {
        bw = bw.max(i.abs_diff(j));
    }
    for i in 0..p.n() {
        let lo = p
            .entries()
            .filter(|&(r, _)| r == i)
            .map(|(_, c)| c)
            .min()
            .unwrap();
        profile += i - lo.min(i);
    }
    (bw, profile)
}

#[test]
fn nnz_matches_brute_force_pairs() {
    let mut meshes = corpus_bundles();
    let raw = corpus::triangle_grid::<f64>(10, 10);
    meshes.push(("grid10", raw.clone(), raw_to_bundle(&raw).unwrap()));
    for (name, raw, b) in meshes {
        let p = p1_pattern(&b);
        let pairs = p1_pairs_brute_force(&raw.cells);
        assert_eq!(p.nnz(), pairs.len(), "{name}");
        for &(a, c) in &pairs {
            assert!(p.contains(a, c), "{name}");
        }
        assert!(p.is_symmetric() && p.has_full_diagonal(), "{name}");
        assert_eq!(p.spy_csv().lines().count(), p.nnz() + 1, "{name}");
        if p.n() <= 200 {
            assert_eq!(
                (p.bandwidth(), p.profile()),
                recount_bandwidth_profile(&p),
                "{name}"
            );
        }
    }
}

#[test]
fn pattern_follows_permutation() {
    for (name, _, b) in corpus_bundles() {
        let base = p1_pattern(&b);
        let n = b.plex.chart_size();
        for seed in 0..5 {
            let perm = Permutation::from_forward(random_permutation(n, seed)).unwrap();
            let moved = p1_pattern(&apply_permutation(&b, &perm).unwrap());
            let vperm = perm.restrict_to(b.plex.vertices());
            assert_eq!(moved, base.permute(&vperm).unwrap(), "{name} seed {seed}");
            assert_eq!(moved.nnz(), base.nnz());
        }
    }
}
