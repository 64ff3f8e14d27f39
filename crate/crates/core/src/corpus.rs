//! Small structured simplicial meshes used as fixtures and benchmarks.

use std::collections::HashMap;

use crate::io::RawMesh;
use crate::Scalar;

fn scalar<T: Scalar>(x: f64) -> T {
    T::from(x).expect("fixture coordinate fits the scalar type")
}

/// Reference simplex of dimension `dim` with every facet marked `k + 1`,
/// `k` being the local vertex it omits.
pub fn single_simplex<T: Scalar>(dim: usize) -> RawMesh<T> {
    assert!((1..=3).contains(&dim));
    let mut coordinates = vec![T::zero(); dim];
    for k in 0..dim {
        let mut x = vec![T::zero(); dim];
        x[k] = T::one();
        coordinates.extend(x);
    }
    let cell: Vec<usize> = (0..=dim).collect();
    let boundary_facets: Vec<Vec<usize>> = (0..=dim)
        .map(|skip| cell.iter().copied().filter(|&v| v != skip).collect())
        .collect();
    RawMesh {
        dim,
        coordinates,
        cells: vec![cell],
        cell_regions: vec![1],
        boundary_markers: (1..=dim as i64 + 1).collect(),
        boundary_facets,
    }
}

/// Unit square split along its diagonal into two triangles, sides marked
/// 1 (bottom), 2 (right), 3 (top), 4 (left).
pub fn two_triangles<T: Scalar>() -> RawMesh<T> {
    triangle_grid(1, 1)
}

/// `nx * ny` squares of the unit square, each split by its `(0,0)-(1,1)`
/// diagonal. Vertex `(i, j)` has index `j * (nx + 1) + i`. Cells left of
/// `x = 0.5` are region 1, the rest region 2; boundary sides are marked as
/// in [`two_triangles`].
pub fn triangle_grid<T: Scalar>(nx: usize, ny: usize) -> RawMesh<T> {
    let vid = |i: usize, j: usize| j * (nx + 1) + i;
    let mut coordinates = Vec::with_capacity((nx + 1) * (ny + 1) * 2);
    for j in 0..=ny {
        for i in 0..=nx {
            coordinates.push(scalar(i as f64 / nx as f64));
            coordinates.push(scalar(j as f64 / ny as f64));
        }
    }
    let mut cells = Vec::with_capacity(2 * nx * ny);
    let mut cell_regions = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let (a, b, c, d) = (vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1));
            let region = if 2 * i < nx { 1 } else { 2 };
            cells.push(vec![a, b, c]);
            cells.push(vec![a, c, d]);
            cell_regions.extend([region, region]);
        }
    }
    let mut boundary_facets = Vec::new();
    let mut boundary_markers = Vec::new();
    for i in 0..nx {
        boundary_facets.push(vec![vid(i, 0), vid(i + 1, 0)]);
        boundary_markers.push(1);
    }
    for j in 0..ny {
        boundary_facets.push(vec![vid(nx, j), vid(nx, j + 1)]);
        boundary_markers.push(2);
    }
    for i in 0..nx {
        boundary_facets.push(vec![vid(i + 1, ny), vid(i, ny)]);
        boundary_markers.push(3);
    }
    for j in 0..ny {
        boundary_facets.push(vec![vid(0, j + 1), vid(0, j)]);
        boundary_markers.push(4);
    }
    RawMesh {
        dim: 2,
        coordinates,
        cells,
        cell_regions,
        boundary_facets,
        boundary_markers,
    }
}

/// Unit cube cut into `n^3` sub-cubes of six tetrahedra each (Kuhn
/// subdivision along the main diagonal, conforming across sub-cubes).
/// Boundary faces are marked 1..6 for x=0, x=1, y=0, y=1, z=0, z=1.
pub fn tet_cube<T: Scalar>(n: usize) -> RawMesh<T> {
    let vid = |i: usize, j: usize, k: usize| (k * (n + 1) + j) * (n + 1) + i;
    let mut coordinates = Vec::with_capacity((n + 1).pow(3) * 3);
    for k in 0..=n {
        for j in 0..=n {
            for i in 0..=n {
                for x in [i, j, k] {
                    coordinates.push(scalar(x as f64 / n as f64));
                }
            }
        }
    }
    const AXIS_ORDERS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut cells = Vec::with_capacity(6 * n * n * n);
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                for axes in AXIS_ORDERS {
                    let mut at = [i, j, k];
                    let mut tet = vec![vid(at[0], at[1], at[2])];
                    for a in axes {
                        at[a] += 1;
                        tet.push(vid(at[0], at[1], at[2]));
                    }
                    cells.push(tet);
                }
            }
        }
    }

    // Faces used by exactly one tet lie on the boundary.
    let mut face_count: HashMap<[usize; 3], (usize, [usize; 3])> = HashMap::new();
    for tet in &cells {
        for skip in 0..4 {
            let face: Vec<usize> = (0..4).filter(|&v| v != skip).map(|v| tet[v]).collect();
            let face = [face[0], face[1], face[2]];
            let mut key = face;
            key.sort_unstable();
            face_count.entry(key).or_insert((0, face)).0 += 1;
        }
    }
    let mut faces: Vec<([usize; 3], [usize; 3])> = face_count
        .into_iter()
        .filter(|(_, (count, _))| *count == 1)
        .map(|(key, (_, face))| (key, face))
        .collect();
    faces.sort_unstable();
    let ijk = |v: usize| {
        [
            v % (n + 1),
            (v / (n + 1)) % (n + 1),
            v / ((n + 1) * (n + 1)),
        ]
    };
    let mut boundary_facets = Vec::with_capacity(faces.len());
    let mut boundary_markers = Vec::with_capacity(faces.len());
    for (_, face) in faces {
        let pts = face.map(ijk);
        let marker = (0..3)
            .find_map(|axis| {
                if pts.iter().all(|p| p[axis] == 0) {
                    Some(2 * axis as i64 + 1)
                } else if pts.iter().all(|p| p[axis] == n) {
                    Some(2 * axis as i64 + 2)
                } else {
                    None
                }
            })
            .expect("boundary face lies on a cube side");
        boundary_facets.push(face.to_vec());
        boundary_markers.push(marker);
    }
    RawMesh {
        dim: 3,
        coordinates,
        cell_regions: vec![1; cells.len()],
        cells,
        boundary_facets,
        boundary_markers,
    }
}

/// Segments joining consecutive entries of `order`; vertex `order[k]` sits
/// at `x = k`. Both ends are marked (1 and 2).
pub fn line_path<T: Scalar>(order: &[usize]) -> RawMesh<T> {
    let n = order.len();
    let mut coordinates = vec![T::zero(); n];
    for (pos, &v) in order.iter().enumerate() {
        coordinates[v] = scalar(pos as f64);
    }
    let cells: Vec<Vec<usize>> = order.windows(2).map(|w| w.to_vec()).collect();
    RawMesh {
        dim: 1,
        coordinates,
        cell_regions: vec![1; cells.len()],
        cells,
        boundary_facets: vec![vec![order[0]], vec![order[n - 1]]],
        boundary_markers: vec![1, 2],
    }
}

/// The named meshes every cross-cutting check runs over.
pub fn standard<T: Scalar>() -> Vec<(&'static str, RawMesh<T>)> {
    vec![
        ("simplex1", single_simplex(1)),
        ("simplex2", single_simplex(2)),
        ("simplex3", single_simplex(3)),
        ("two_triangles", two_triangles()),
        ("grid4", triangle_grid(4, 4)),
        ("grid32", triangle_grid(32, 32)),
        ("cube3", tet_cube(3)),
    ]
}
