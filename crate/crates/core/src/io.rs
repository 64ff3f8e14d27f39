//! Gmsh MSH 2.2 ASCII reading and writing, and conversion between raw
//! cell-vertex meshes and plex bundles.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::renumber::Permutation;
use crate::section::Field;
use crate::{Error, Label, Plex, PointId, Result, Scalar, Section};

pub const REGION_LABEL: &str = "region";
pub const BOUNDARY_LABEL: &str = "boundary";

/// Cell-vertex mesh as stored in a mesh file. Vertex ids are 0-based.
#[derive(Clone, Debug, PartialEq)]
pub struct RawMesh<T> {
    pub dim: usize,
    /// `dim` values per vertex.
    pub coordinates: Vec<T>,
    pub cells: Vec<Vec<usize>>,
    pub cell_regions: Vec<i64>,
    pub boundary_facets: Vec<Vec<usize>>,
    pub boundary_markers: Vec<i64>,
}

impl<T: Scalar> RawMesh<T> {
    pub fn num_vertices(&self) -> usize {
        self.coordinates.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn vertex(&self, v: usize) -> &[T] {
        &self.coordinates[v * self.dim..(v + 1) * self.dim]
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.dim) {
            return Err(Error::InvalidMesh(format!(
                "unsupported dimension {}",
                self.dim
            )));
        }
        if !self.coordinates.len().is_multiple_of(self.dim) {
            return Err(Error::InvalidMesh(
                "coordinate array length is not a multiple of dim".into(),
            ));
        }
        if self.cells.len() != self.cell_regions.len() {
            return Err(Error::InvalidMesh("one region id per cell required".into()));
        }
        if self.boundary_facets.len() != self.boundary_markers.len() {
            return Err(Error::InvalidMesh(
                "one marker per boundary facet required".into(),
            ));
        }
        let nv = self.num_vertices();
        let check = |tuples: &[Vec<usize>], arity: usize, what: &str| -> Result<()> {
            for t in tuples {
                if t.len() != arity {
                    return Err(Error::InvalidMesh(format!(
                        "{what} with {} vertices in a {}-dimensional mesh",
                        t.len(),
                        self.dim
                    )));
                }
                if let Some(&v) = t.iter().find(|&&v| v >= nv) {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        num_vertices: nv,
                    });
                }
            }
            Ok(())
        };
        check(&self.cells, self.dim + 1, "cell")?;
        check(&self.boundary_facets, self.dim, "boundary facet")
    }
}

/// Plex plus coordinates and markers.
#[derive(Clone, Debug, PartialEq)]
pub struct MeshBundle<T> {
    pub plex: Plex,
    /// `dim` dofs on every vertex, none elsewhere.
    pub coordinates: Field<T>,
    /// Region ids on cells.
    pub region: Label,
    /// Boundary markers on facets.
    pub boundary: Label,
}

impl<T: Scalar> MeshBundle<T> {
    pub fn dim(&self) -> usize {
        self.plex.dim()
    }

    pub fn vertex_coordinates(&self, v: PointId) -> &[T] {
        self.coordinates.point_values(v)
    }

    /// Arithmetic mean of the vertex coordinates of every cell, in
    /// `plex.cells()` order.
    pub fn cell_centroids(&self) -> Vec<Vec<T>> {
        let dim = self.dim();
        self.plex
            .cells()
            .iter()
            .map(|&c| {
                let verts = self.plex.closure_vertices(c);
                let mut acc = vec![T::zero(); dim];
                for &v in &verts {
                    for (a, &x) in acc.iter_mut().zip(self.vertex_coordinates(v)) {
                        *a = *a + x;
                    }
                }
                let n = T::from(verts.len()).unwrap();
                acc.into_iter().map(|a| a / n).collect()
            })
            .collect()
    }

    /// Relabels every point; coordinates and labels follow.
    pub fn permute(&self, perm: &Permutation) -> Result<MeshBundle<T>> {
        let plex = self.plex.permute(perm)?;
        let coordinates = self.coordinates.permute(perm)?;
        Ok(MeshBundle {
            plex,
            coordinates,
            region: self.region.map_points(|p| Some(perm.apply(p))),
            boundary: self.boundary.map_points(|p| Some(perm.apply(p))),
        })
    }
}

/// Parses a Gmsh MSH 2.2 ASCII stream.
///
/// Elements of the highest dimension present become cells, those one
/// dimension lower become boundary facets with their first tag as marker.
/// Point elements are only kept as facets of 1D meshes.
pub fn read_gmsh<T: Scalar, R: BufRead>(reader: R) -> Result<RawMesh<T>> {
    let mut lines = LineReader::new(reader);
    let mut saw_format = false;
    let mut node_ids: HashMap<u64, usize> = HashMap::new();
    let mut nodes: Vec<[T; 3]> = Vec::new();
    // (dim, marker, node indices)
    let mut elements: Vec<(usize, i64, Vec<usize>)> = Vec::new();
    let mut saw_nodes = false;
    let mut saw_elements = false;

    while let Some((line_no, line)) = lines.next_line()? {
        let header = line.trim();
        if header.is_empty() {
            continue;
        }
        let Some(name) = header.strip_prefix('$') else {
            return Err(Error::parse(
                line_no,
                format!("expected a section header, found {header:?}"),
            ));
        };
        match name {
            "MeshFormat" => {
                let (ln, fmt) = lines.expect_line("$MeshFormat body")?;
                let parts: Vec<&str> = fmt.split_whitespace().collect();
                if parts.len() < 3 {
                    return Err(Error::parse(ln, "malformed $MeshFormat line"));
                }
                let version = parts[0];
                if !version.starts_with("2.") && version != "2" {
                    return Err(Error::parse(
                        ln,
                        format!("MSH version {version} is not supported; only 2.2 ASCII is"),
                    ));
                }
                if parts[1] != "0" {
                    return Err(Error::parse(ln, "binary MSH files are not supported"));
                }
                if parts[2] != "8" {
                    return Err(Error::parse(
                        ln,
                        format!("unsupported data size {}", parts[2]),
                    ));
                }
                lines.expect_end("MeshFormat")?;
                saw_format = true;
            }
            "Nodes" => {
                if !saw_format {
                    return Err(Error::parse(line_no, "$Nodes before $MeshFormat"));
                }
                let count = lines.expect_count("$Nodes")?;
                nodes.reserve(count);
                for _ in 0..count {
                    let (ln, body) = lines.expect_body("Nodes")?;
                    let mut tok = body.split_whitespace();
                    let id: u64 = parse_token(tok.next(), ln, "node id")?;
                    let mut xyz = [T::zero(); 3];
                    for x in &mut xyz {
                        *x = parse_token(tok.next(), ln, "node coordinate")?;
                    }
                    if node_ids.insert(id, nodes.len()).is_some() {
                        return Err(Error::parse(ln, format!("duplicate node id {id}")));
                    }
                    nodes.push(xyz);
                }
                lines.expect_end("Nodes")?;
                saw_nodes = true;
            }
            "Elements" => {
                if !saw_format {
                    return Err(Error::parse(line_no, "$Elements before $MeshFormat"));
                }
                let count = lines.expect_count("$Elements")?;
                for _ in 0..count {
                    let (ln, body) = lines.expect_body("Elements")?;
                    let tok: Vec<&str> = body.split_whitespace().collect();
                    let field = |i: usize, what: &str| -> Result<i64> {
                        parse_token(tok.get(i).copied(), ln, what)
                    };
                    let ty = field(1, "element type")?;
                    let ntags = field(2, "tag count")?;
                    if ntags < 0 {
                        return Err(Error::parse(ln, "negative tag count"));
                    }
                    let ntags = ntags as usize;
                    let (dim, nnodes) = match ty {
                        1 => (1, 2),
                        2 => (2, 3),
                        4 => (3, 4),
                        15 => (0, 1),
                        other => {
                            return Err(Error::parse(ln, format!("unknown element type {other}")))
                        }
                    };
                    let marker = if ntags > 0 { field(3, "tag")? } else { 0 };
                    let first_node = 3 + ntags;
                    if tok.len() != first_node + nnodes {
                        return Err(Error::parse(
                            ln,
                            format!("element type {ty} needs {nnodes} nodes"),
                        ));
                    }
                    let mut verts = Vec::with_capacity(nnodes);
                    for t in &tok[first_node..] {
                        let id: u64 = parse_token(Some(t), ln, "node reference")?;
                        let &v = node_ids.get(&id).ok_or_else(|| {
                            Error::parse(ln, format!("element references missing node {id}"))
                        })?;
                        verts.push(v);
                    }
                    elements.push((dim, marker, verts));
                }
                lines.expect_end("Elements")?;
                saw_elements = true;
            }
            other if other.starts_with("End") => {
                return Err(Error::parse(line_no, format!("unexpected ${other}")));
            }
            other => {
                let end = format!("$End{other}");
                loop {
                    match lines.next_line()? {
                        Some((_, l)) if l.trim() == end => break,
                        Some(_) => {}
                        None => {
                            return Err(Error::parse(line_no, format!("${other} without {end}")))
                        }
                    }
                }
            }
        }
    }

    if !saw_format {
        return Err(Error::parse(0, "missing $MeshFormat section"));
    }
    if !saw_nodes || !saw_elements {
        return Err(Error::parse(0, "missing $Nodes or $Elements section"));
    }
    let dim = elements.iter().map(|e| e.0).max().unwrap_or(0);
    if dim == 0 {
        return Err(Error::InvalidMesh("no cells of maximal dimension".into()));
    }

    let mut mesh = RawMesh {
        dim,
        coordinates: nodes.iter().flat_map(|xyz| xyz[..dim].to_vec()).collect(),
        cells: Vec::new(),
        cell_regions: Vec::new(),
        boundary_facets: Vec::new(),
        boundary_markers: Vec::new(),
    };
    for (edim, marker, verts) in elements {
        if edim == dim {
            mesh.cells.push(verts);
            mesh.cell_regions.push(marker);
        } else if edim + 1 == dim {
            mesh.boundary_facets.push(verts);
            mesh.boundary_markers.push(marker);
        }
    }
    Ok(mesh)
}

pub fn read_gmsh_str<T: Scalar>(text: &str) -> Result<RawMesh<T>> {
    read_gmsh(text.as_bytes())
}

fn parse_token<V: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<V> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} {tok:?}")))
}

struct LineReader<R> {
    inner: R,
    line_no: usize,
    buf: String,
}

impl<R: BufRead> LineReader<R> {
    fn new(inner: R) -> Self {
        LineReader {
            inner,
            line_no: 0,
            buf: String::new(),
        }
    }

    fn next_line(&mut self) -> Result<Option<(usize, String)>> {
        self.buf.clear();
        if self.inner.read_line(&mut self.buf)? == 0 {
            return Ok(None);
        }
        self.line_no += 1;
        Ok(Some((self.line_no, self.buf.trim_end().to_string())))
    }

    fn expect_line(&mut self, what: &str) -> Result<(usize, String)> {
        self.next_line()?
            .ok_or_else(|| Error::parse(self.line_no, format!("unexpected end of file in {what}")))
    }

    /// A data line inside section `name`; hitting a `$` line means the
    /// section ended early.
    fn expect_body(&mut self, name: &str) -> Result<(usize, String)> {
        let (ln, line) = self.expect_line(&format!("${name}"))?;
        if line.trim_start().starts_with('$') {
            return Err(Error::parse(
                ln,
                format!("${name} ended before its declared count was reached"),
            ));
        }
        Ok((ln, line))
    }

    fn expect_count(&mut self, what: &str) -> Result<usize> {
        let (ln, line) = self.expect_line(what)?;
        parse_token(Some(line.trim()), ln, &format!("{what} count"))
    }

    fn expect_end(&mut self, name: &str) -> Result<()> {
        let (ln, line) = self.expect_line(&format!("${name}"))?;
        if line.trim() != format!("$End{name}") {
            return Err(Error::parse(
                ln,
                format!("expected $End{name}, found {:?}", line.trim()),
            ));
        }
        Ok(())
    }
}

/// Scientific notation with `digits` significant digits and a two-digit
/// signed exponent, e.g. `1.250000000000000e-01`.
fn format_sci<T: Scalar>(x: T, digits: usize) -> String {
    let s = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = s.split_once('e').expect("LowerExp output has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// 16 significant digits, widened to the type's round-trip precision when
/// 16 are not enough to read back the same value.
fn format_coordinate<T: Scalar>(x: T) -> String {
    let s = format_sci(x, 16);
    if s.parse::<T>().ok() == Some(x) {
        s
    } else {
        format_sci(x, T::ROUND_TRIP_DIGITS.max(16))
    }
}

/// Writes `mesh` as Gmsh MSH 2.2 ASCII. Boundary facets precede cells; each
/// element carries two tags, both set to its marker.
pub fn write_gmsh<T: Scalar, W: Write>(mesh: &RawMesh<T>, mut out: W) -> Result<()> {
    mesh.validate()?;
    let nv = mesh.num_vertices();
    if nv == 0 {
        return Err(Error::InvalidMesh(
            "refusing to write a mesh without vertices".into(),
        ));
    }
    writeln!(out, "$MeshFormat\n2.2 0 8\n$EndMeshFormat")?;
    writeln!(out, "$Nodes\n{nv}")?;
    let zero = format_coordinate(T::zero());
    for v in 0..nv {
        write!(out, "{}", v + 1)?;
        let xyz = mesh.vertex(v);
        for k in 0..3 {
            match xyz.get(k) {
                Some(&x) => write!(out, " {}", format_coordinate(x))?,
                None => write!(out, " {zero}")?,
            }
        }
        writeln!(out)?;
    }
    writeln!(out, "$EndNodes")?;

    let facet_type = match mesh.dim {
        1 => 15,
        2 => 1,
        _ => 2,
    };
    let cell_type = match mesh.dim {
        1 => 1,
        2 => 2,
        _ => 4,
    };
    let total = mesh.boundary_facets.len() + mesh.cells.len();
    let facets = mesh
        .boundary_facets
        .iter()
        .zip(&mesh.boundary_markers)
        .map(|(f, &m)| (facet_type, m, f));
    let cells = mesh
        .cells
        .iter()
        .zip(&mesh.cell_regions)
        .map(|(c, &r)| (cell_type, r, c));
    write_elements(&mut out, total, facets.chain(cells))
}

fn write_elements<'a, W: Write>(
    out: &mut W,
    total: usize,
    elements: impl Iterator<Item = (u8, i64, &'a Vec<usize>)>,
) -> Result<()> {
    writeln!(out, "$Elements\n{total}")?;
    for (i, (ty, marker, verts)) in elements.enumerate() {
        write!(out, "{} {ty} 2 {marker} {marker}", i + 1)?;
        for v in verts {
            write!(out, " {}", v + 1)?;
        }
        writeln!(out)?;
    }
    writeln!(out, "$EndElements")?;
    Ok(())
}

pub fn write_gmsh_string<T: Scalar>(mesh: &RawMesh<T>) -> Result<String> {
    let mut buf = Vec::new();
    write_gmsh(mesh, &mut buf)?;
    Ok(String::from_utf8(buf).expect("writer emits ASCII"))
}

/// Interpolates the raw mesh into a plex and attaches coordinates, region
/// ids and boundary markers to the matching points.
pub fn raw_to_bundle<T: Scalar>(mesh: &RawMesh<T>) -> Result<MeshBundle<T>> {
    mesh.validate()?;
    let nv = mesh.num_vertices();
    let plex = Plex::from_cells(&mesh.cells, nv, mesh.dim)?;
    let ncells = mesh.cells.len();

    let mut dofs_per_depth = vec![0; plex.dim() + 1];
    dofs_per_depth[0] = mesh.dim;
    let section = Section::from_depth_dofs(&plex, &dofs_per_depth)?;
    // Vertices occupy [ncells, ncells + nv) in order, so the raw coordinate
    // array is already laid out by the section.
    let coordinates = Field::new("coordinates", section, mesh.coordinates.clone())?;

    let mut region = Label::new(REGION_LABEL);
    for (c, &r) in mesh.cell_regions.iter().enumerate() {
        region.set(PointId(c), r);
    }

    let facet_depth = mesh.dim - 1;
    let facet_lookup: HashMap<Vec<PointId>, PointId> = plex
        .depth_stratum(facet_depth)
        .iter()
        .map(|&f| (plex.closure_vertices(f), f))
        .collect();
    let mut boundary = Label::new(BOUNDARY_LABEL);
    for (facet, &marker) in mesh.boundary_facets.iter().zip(&mesh.boundary_markers) {
        let mut key: Vec<PointId> = facet.iter().map(|&v| PointId(ncells + v)).collect();
        key.sort_unstable();
        let &p = facet_lookup.get(&key).ok_or_else(|| {
            Error::InvalidMesh(format!(
                "boundary facet {facet:?} is not a facet of any cell"
            ))
        })?;
        boundary.set(p, marker);
    }

    Ok(MeshBundle {
        plex,
        coordinates,
        region,
        boundary,
    })
}

/// Flattens a bundle back to a cell-vertex mesh. Vertices are numbered in
/// ascending point order; cells follow `plex.cells()`; boundary facets are
/// listed by point, then marker.
pub fn bundle_to_raw<T: Scalar>(bundle: &MeshBundle<T>) -> Result<RawMesh<T>> {
    let plex = &bundle.plex;
    let dim = plex.dim();
    let mut vertex_index = vec![usize::MAX; plex.chart_size()];
    let mut coordinates = Vec::with_capacity(plex.num_vertices() * dim);
    for (i, &v) in plex.vertices().iter().enumerate() {
        vertex_index[v.0] = i;
        let xyz = bundle.vertex_coordinates(v);
        if xyz.len() != dim {
            return Err(Error::SizeMismatch(format!(
                "vertex {v} has {} coordinates in a {dim}-dimensional mesh",
                xyz.len()
            )));
        }
        coordinates.extend_from_slice(xyz);
    }
    let tuple = |p: PointId| -> Vec<usize> {
        let verts = if plex.depth(p) == 0 {
            vec![p]
        } else {
            plex.simplex_vertices(p)
        };
        verts.iter().map(|v| vertex_index[v.0]).collect()
    };

    let mut cells = Vec::with_capacity(plex.num_cells());
    let mut cell_regions = Vec::with_capacity(plex.num_cells());
    for &c in plex.cells() {
        cells.push(tuple(c));
        cell_regions.push(bundle.region.values_of(c).first().copied().unwrap_or(0));
    }
    let mut boundary_facets = Vec::new();
    let mut boundary_markers = Vec::new();
    for (p, marker) in bundle.boundary.entries() {
        boundary_facets.push(tuple(p));
        boundary_markers.push(marker);
    }
    Ok(RawMesh {
        dim,
        coordinates,
        cells,
        cell_regions,
        boundary_facets,
        boundary_markers,
    })
}
