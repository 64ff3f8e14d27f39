//! Point permutations and Reverse Cuthill-McKee ordering.

use std::collections::VecDeque;

use crate::io::MeshBundle;
use crate::{Error, Plex, PointId, Result, Scalar};

/// Bijection on `[0, n)` stored in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            forward: (0..n).collect(),
            inverse: (0..n).collect(),
        }
    }

    /// From the old→new map.
    pub fn from_forward(forward: Vec<usize>) -> Result<Self> {
        let inverse = invert(&forward)?;
        Ok(Permutation { forward, inverse })
    }

    /// From the new→old map, i.e. the list of old indices in their new order.
    pub fn from_inverse(inverse: Vec<usize>) -> Result<Self> {
        let forward = invert(&inverse)?;
        Ok(Permutation { forward, inverse })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    #[inline]
    pub fn forward(&self, old: usize) -> usize {
        self.forward[old]
    }

    #[inline]
    pub fn inverse(&self, new: usize) -> usize {
        self.inverse[new]
    }

    #[inline]
    pub fn apply(&self, p: PointId) -> PointId {
        PointId(self.forward[p.0])
    }

    pub fn forward_map(&self) -> &[usize] {
        &self.forward
    }

    pub fn inverse_map(&self) -> &[usize] {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.forward.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverted(&self) -> Permutation {
        Permutation {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &Permutation) -> Result<Permutation> {
        if self.len() != then.len() {
            return Err(Error::NotBijective(format!(
                "cannot compose permutations of length {} and {}",
                self.len(),
                then.len()
            )));
        }
        Permutation::from_forward(self.forward.iter().map(|&i| then.forward[i]).collect())
    }

    /// Induced permutation on a subset of points: position `i` in `points`
    /// (sorted ascending) maps to the rank of `forward(points[i])` among the
    /// images of the whole subset.
    pub fn restrict_to(&self, points: &[PointId]) -> Permutation {
        let mut images: Vec<(usize, usize)> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (self.forward[p.0], i))
            .collect();
        images.sort_unstable();
        let inverse = images.into_iter().map(|(_, i)| i).collect();
        Permutation::from_inverse(inverse).expect("ranks form a bijection")
    }
}

fn invert(map: &[usize]) -> Result<Vec<usize>> {
    let n = map.len();
    let mut inv = vec![usize::MAX; n];
    for (i, &j) in map.iter().enumerate() {
        if j >= n {
            return Err(Error::NotBijective(format!(
                "image {j} out of range [0, {n})"
            )));
        }
        if inv[j] != usize::MAX {
            return Err(Error::NotBijective(format!("image {j} hit twice")));
        }
        inv[j] = i;
    }
    Ok(inv)
}

impl Plex {
    /// Relabels every point through `perm`, rewriting cones and supports.
    pub fn permute(&self, perm: &Permutation) -> Result<Plex> {
        if perm.len() != self.chart_size() {
            return Err(Error::NotBijective(format!(
                "permutation over {} points applied to a chart of {}",
                perm.len(),
                self.chart_size()
            )));
        }
        let mut cones = vec![Vec::new(); self.chart_size()];
        for p in 0..self.chart_size() {
            cones[perm.forward(p)] = self
                .cone_unchecked(PointId(p))
                .iter()
                .map(|&q| perm.apply(q))
                .collect();
        }
        Plex::from_cones(cones)
    }
}

/// Vertex adjacency through shared depth-1 points, indexed by position in
/// `plex.vertices()`.
pub fn vertex_adjacency(plex: &Plex) -> Vec<Vec<usize>> {
    let vertices = plex.vertices();
    let mut index = vec![usize::MAX; plex.chart_size()];
    for (i, v) in vertices.iter().enumerate() {
        index[v.0] = i;
    }
    let mut adj = vec![Vec::new(); vertices.len()];
    for &e in plex.depth_stratum(1) {
        let cone = plex.cone_unchecked(e);
        for &a in cone {
            for &b in cone {
                if a != b {
                    adj[index[a.0]].push(index[b.0]);
                }
            }
        }
    }
    for row in &mut adj {
        row.sort_unstable();
        row.dedup();
    }
    adj
}

/// Breadth-first level structure from `root`; returns the levels.
fn bfs_levels(adj: &[Vec<usize>], root: usize, seen: &mut [bool]) -> Vec<Vec<usize>> {
    let mut levels = vec![vec![root]];
    seen[root] = true;
    loop {
        let mut next = Vec::new();
        for &u in levels.last().unwrap() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    for level in &levels {
        for &u in level {
            seen[u] = false;
        }
    }
    levels
}

/// Start vertex for Cuthill-McKee: repeat BFS from the lowest-id vertex of
/// the deepest level until the eccentricity stops growing.
fn pseudo_peripheral(adj: &[Vec<usize>], start: usize, seen: &mut [bool]) -> usize {
    let mut levels = bfs_levels(adj, start, seen);
    loop {
        let far = *levels.last().unwrap().iter().min().unwrap();
        let far_levels = bfs_levels(adj, far, seen);
        if far_levels.len() > levels.len() {
            levels = far_levels;
        } else {
            return far;
        }
    }
}

/// Reverse Cuthill-McKee order of a graph: `order[k]` is the vertex placed
/// at position `k`. Components are handled one after another, ordered by
/// their lowest vertex.
pub fn rcm_graph_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut placed = vec![false; n];
    let mut scratch = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for seed in 0..n {
        if placed[seed] {
            continue;
        }
        let start = pseudo_peripheral(adj, seed, &mut scratch);
        let component_start = order.len();
        let mut queue = VecDeque::from([start]);
        placed[start] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let mut next: Vec<usize> = adj[u].iter().copied().filter(|&w| !placed[w]).collect();
            next.sort_unstable_by_key(|&w| (adj[w].len(), w));
            for w in next {
                placed[w] = true;
                queue.push_back(w);
            }
        }
        order[component_start..].reverse();
    }
    order
}

/// RCM permutation of the whole chart.
///
/// Vertices are ordered by RCM on the edge graph. Every other stratum keeps
/// the set of ids it occupies, and its points are sorted within it by the
/// smallest new vertex position in their closure (ties by old id).
pub fn rcm_ordering(plex: &Plex) -> Permutation {
    let adj = vertex_adjacency(plex);
    let order = rcm_graph_order(&adj);
    let vertices = plex.vertices();
    let mut vertex_rank = vec![usize::MAX; plex.chart_size()];
    for (k, &i) in order.iter().enumerate() {
        vertex_rank[vertices[i].0] = k;
    }

    let mut forward = vec![0usize; plex.chart_size()];
    for d in 0..=plex.dim() {
        let slots = plex.depth_stratum(d);
        let mut keyed: Vec<(usize, PointId)> = slots
            .iter()
            .map(|&p| {
                let key = if d == 0 {
                    vertex_rank[p.0]
                } else {
                    plex.closure_vertices(p)
                        .iter()
                        .map(|v| vertex_rank[v.0])
                        .min()
                        .unwrap_or(usize::MAX)
                };
                (key, p)
            })
            .collect();
        keyed.sort_unstable();
        for (slot, (_, p)) in slots.iter().zip(keyed) {
            forward[p.0] = slot.0;
        }
    }
    Permutation::from_forward(forward).expect("stratum slots form a bijection")
}

/// Relabels a bundle's points; coordinates and labels follow their points.
pub fn apply_permutation<T: Scalar>(
    bundle: &MeshBundle<T>,
    perm: &Permutation,
) -> Result<MeshBundle<T>> {
    bundle.permute(perm)
}
