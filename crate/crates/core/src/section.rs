//! Point data layout: a dof count per point and offsets into one flat array.

use crate::renumber::Permutation;
use crate::{Error, Plex, PointId, Result, Scalar};

/// Per-point dof counts with offsets given by the exclusive prefix sum in
/// ascending point order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    dofs: Vec<usize>,
    offsets: Vec<usize>,
}

impl Section {
    /// Section with an arbitrary dof count per point.
    pub fn from_point_dofs(dofs: Vec<usize>) -> Section {
        let mut offsets = Vec::with_capacity(dofs.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &d in &dofs {
            acc += d;
            offsets.push(acc);
        }
        Section { dofs, offsets }
    }

    /// Uniform layout per depth: every point at depth `k` carries
    /// `dofs_per_depth[k]` dofs.
    pub fn from_depth_dofs(plex: &Plex, dofs_per_depth: &[usize]) -> Result<Section> {
        if dofs_per_depth.len() != plex.dim() + 1 {
            return Err(Error::SizeMismatch(format!(
                "expected {} dof counts for a {}-dimensional plex, got {}",
                plex.dim() + 1,
                plex.dim(),
                dofs_per_depth.len()
            )));
        }
        let dofs = (0..plex.chart_size())
            .map(|p| dofs_per_depth[plex.depth(PointId(p))])
            .collect();
        Ok(Section::from_point_dofs(dofs))
    }

    /// Number of points the section is defined on.
    pub fn len(&self) -> usize {
        self.dofs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dofs.is_empty()
    }

    pub fn dof(&self, p: PointId) -> usize {
        self.dofs[p.0]
    }

    pub fn offset(&self, p: PointId) -> usize {
        self.offsets[p.0]
    }

    /// Index range of `p`'s values in the flat storage.
    pub fn range(&self, p: PointId) -> std::ops::Range<usize> {
        self.offsets[p.0]..self.offsets[p.0 + 1]
    }

    pub fn total_size(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn dofs(&self) -> &[usize] {
        &self.dofs
    }

    /// Dof counts of the given points, in order.
    pub fn restrict(&self, points: &[PointId]) -> Section {
        Section::from_point_dofs(points.iter().map(|p| self.dofs[p.0]).collect())
    }

    /// Moves each point's dof count to its new id and recomputes offsets.
    pub fn permute(&self, perm: &Permutation) -> Result<Section> {
        if perm.len() != self.len() {
            return Err(Error::NotBijective(format!(
                "permutation over {} points applied to a section over {}",
                perm.len(),
                self.len()
            )));
        }
        let mut dofs = vec![0; self.len()];
        for (old, &d) in self.dofs.iter().enumerate() {
            dofs[perm.forward(old)] = d;
        }
        Ok(Section::from_point_dofs(dofs))
    }
}

/// Values laid out by a section.
#[derive(Clone, Debug, PartialEq)]
pub struct Field<T> {
    pub name: String,
    pub section: Section,
    pub values: Vec<T>,
}

impl<T: Scalar> Field<T> {
    pub fn new(name: impl Into<String>, section: Section, values: Vec<T>) -> Result<Self> {
        if values.len() != section.total_size() {
            return Err(Error::SizeMismatch(format!(
                "field has {} values but its section needs {}",
                values.len(),
                section.total_size()
            )));
        }
        Ok(Field {
            name: name.into(),
            section,
            values,
        })
    }

    pub fn zeros(name: impl Into<String>, section: Section) -> Self {
        let values = vec![T::zero(); section.total_size()];
        Field {
            name: name.into(),
            section,
            values,
        }
    }

    pub fn point_values(&self, p: PointId) -> &[T] {
        &self.values[self.section.range(p)]
    }

    /// Values of the given points, laid out by the restricted section.
    pub fn restrict(&self, points: &[PointId]) -> Field<T> {
        let section = self.section.restrict(points);
        let mut values = Vec::with_capacity(section.total_size());
        for &p in points {
            values.extend_from_slice(self.point_values(p));
        }
        Field {
            name: self.name.clone(),
            section,
            values,
        }
    }

    /// Moves every point's values along with the point.
    pub fn permute(&self, perm: &Permutation) -> Result<Field<T>> {
        let section = self.section.permute(perm)?;
        let mut values = vec![T::zero(); self.values.len()];
        for old in 0..self.section.len() {
            let src = self.section.range(PointId(old));
            let dst = section.offset(PointId(perm.forward(old)));
            values[dst..dst + src.len()].copy_from_slice(&self.values[src]);
        }
        Ok(Field {
            name: self.name.clone(),
            section,
            values,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tet() -> Plex {
        Plex::from_cells(&[vec![0, 1, 2, 3]], 4, 3).unwrap()
    }

    #[test]
    fn p1_on_tet() {
        let s = Section::from_depth_dofs(&tet(), &[1, 0, 0, 0]).unwrap();
        assert_eq!(s.total_size(), 4);
        for v in 1..=4 {
            assert_eq!(s.dof(PointId(v)), 1);
            assert_eq!(s.offset(PointId(v)), v - 1);
        }
        assert_eq!(s.offset(PointId(14)), 4);
    }

    #[test]
    fn zero_layout_and_length_mismatch() {
        let plex = tet();
        let s = Section::from_depth_dofs(&plex, &[0, 0, 0, 0]).unwrap();
        assert_eq!(s.total_size(), 0);
        assert!(matches!(
            Section::from_depth_dofs(&plex, &[1, 0]),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn vertex_and_cell_dofs_on_two_triangles() {
        let plex = Plex::from_cells(&[vec![0, 1, 2], vec![0, 2, 3]], 4, 2).unwrap();
        let s = Section::from_depth_dofs(&plex, &[1, 0, 1]).unwrap();
        assert_eq!(s.total_size(), 6);
    }

    #[test]
    fn permute_swaps_and_identity() {
        let s = Section::from_point_dofs(vec![1, 2, 0]);
        let id = Permutation::identity(3);
        assert_eq!(s.permute(&id).unwrap(), s);
        let swap = Permutation::from_forward(vec![1, 0, 2]).unwrap();
        let p = s.permute(&swap).unwrap();
        assert_eq!(p.dofs(), &[2, 1, 0]);
        assert_eq!(p.total_size(), 3);
        assert!(s.permute(&Permutation::identity(2)).is_err());
    }

    #[test]
    fn field_permute_moves_values() {
        let s = Section::from_point_dofs(vec![1, 2, 0]);
        let f = Field::new("u", s, vec![1.0, 2.0, 3.0]).unwrap();
        let perm = Permutation::from_forward(vec![2, 0, 1]).unwrap();
        let g = f.permute(&perm).unwrap();
        assert_eq!(g.point_values(PointId(0)), &[2.0, 3.0]);
        assert_eq!(g.point_values(PointId(2)), &[1.0]);
        assert!(Field::new("bad", Section::from_point_dofs(vec![2]), vec![1.0f32]).is_err());
    }
}
