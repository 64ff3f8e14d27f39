//! P1 sparsity patterns, bandwidth and spy-plot export.

use std::io::Write;

use crate::io::MeshBundle;
use crate::renumber::Permutation;
use crate::{Error, Plex, Result, Scalar};

/// Symmetric CSR structure without values. Columns are strictly increasing
/// within each row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsrPattern {
    row_offsets: Vec<usize>,
    cols: Vec<usize>,
}

impl CsrPattern {
    /// Builds a pattern from per-row column lists; rows are sorted and
    /// deduplicated.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<CsrPattern> {
        let n = rows.len();
        let mut row_offsets = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        row_offsets.push(0);
        for mut row in rows {
            row.sort_unstable();
            row.dedup();
            if let Some(&c) = row.last() {
                if c >= n {
                    return Err(Error::SizeMismatch(format!(
                        "column {c} in a pattern with {n} rows"
                    )));
                }
            }
            cols.extend(row);
            row_offsets.push(cols.len());
        }
        Ok(CsrPattern { row_offsets, cols })
    }

    pub fn n(&self) -> usize {
        self.row_offsets.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.cols[self.row_offsets[i]..self.row_offsets[i + 1]]
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.row(i).binary_search(&j).is_ok()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n()).all(|i| self.row(i).iter().all(|&j| self.contains(j, i)))
    }

    pub fn has_full_diagonal(&self) -> bool {
        (0..self.n()).all(|i| self.contains(i, i))
    }

    /// Row `i`'s distance from the diagonal to its leftmost entry.
    fn row_extent(&self, i: usize) -> usize {
        self.row(i).first().map_or(0, |&j| i.saturating_sub(j))
    }

    pub fn bandwidth(&self) -> usize {
        (0..self.n()).map(|i| self.row_extent(i)).max().unwrap_or(0)
    }

    pub fn profile(&self) -> usize {
        (0..self.n()).map(|i| self.row_extent(i)).sum()
    }

    /// Symmetric permutation: entry `(i, j)` moves to
    /// `(perm(i), perm(j))`.
    pub fn permute(&self, perm: &Permutation) -> Result<CsrPattern> {
        if perm.len() != self.n() {
            return Err(Error::NotBijective(format!(
                "permutation over {} indices applied to a pattern with {} rows",
                perm.len(),
                self.n()
            )));
        }
        let rows = (0..self.n())
            .map(|new| {
                self.row(perm.inverse(new))
                    .iter()
                    .map(|&j| perm.forward(j))
                    .collect()
            })
            .collect();
        CsrPattern::from_rows(rows)
    }

    /// All stored `(row, col)` entries, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |i| self.row(i).iter().map(move |&j| (i, j)))
    }

    /// CSV with header `row,col` and one line per stored entry, row-major.
    pub fn write_spy<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "row,col")?;
        for (i, j) in self.entries() {
            writeln!(out, "{i},{j}")?;
        }
        Ok(())
    }

    pub fn spy_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_spy(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ASCII output")
    }
}

/// Vertex-vertex pattern of a P1 discretisation: `(i, j)` is stored iff
/// vertices `i` and `j` lie in the closure of a common cell. Indices are
/// positions in `plex.vertices()`.
pub fn p1_pattern_of(plex: &Plex) -> CsrPattern {
    let vertices = plex.vertices();
    let mut index = vec![usize::MAX; plex.chart_size()];
    for (i, v) in vertices.iter().enumerate() {
        index[v.0] = i;
    }
    let mut rows: Vec<Vec<usize>> = (0..vertices.len()).map(|i| vec![i]).collect();
    for &c in plex.cells() {
        let verts = plex.closure_vertices(c);
        for &a in &verts {
            rows[index[a.0]].extend(verts.iter().map(|b| index[b.0]));
        }
    }
    CsrPattern::from_rows(rows).expect("vertex indices are in range")
}

pub fn p1_pattern<T: Scalar>(bundle: &MeshBundle<T>) -> CsrPattern {
    p1_pattern_of(&bundle.plex)
}
