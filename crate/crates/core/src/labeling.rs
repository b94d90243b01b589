//! Integer coordinate labelings of graph vertices.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::Vertex;

/// An injective map from vertices to points of `Z^dim`.
///
/// Coordinates are stored flat, `dim` entries per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    dim: usize,
    coords: Vec<i64>,
}

impl Labeling {
    /// Builds a labeling from per-vertex points; all points must have the same
    /// dimension and be pairwise distinct.
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let dim = points.first().map(Vec::len).unwrap_or(1);
        if dim == 0 {
            return Err(Error::LabelingMismatch(
                "dimension must be at least 1".into(),
            ));
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (v, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::LabelingMismatch(format!(
                    "vertex {v} has a {}-dim label, expected {dim}",
                    p.len()
                )));
            }
            coords.extend_from_slice(p);
        }
        let labeling = Labeling { dim, coords };
        labeling.check_injective()?;
        Ok(labeling)
    }

    pub(crate) fn from_flat(dim: usize, coords: Vec<i64>) -> Self {
        debug_assert!(dim >= 1 && coords.len().is_multiple_of(dim));
        Labeling { dim, coords }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, v: Vertex) -> &[i64] {
        &self.coords[v * self.dim..(v + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[i64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn to_points(&self) -> Vec<Vec<i64>> {
        self.points().map(<[i64]>::to_vec).collect()
    }

    /// Concatenates coordinates of two labelings in product order
    /// `(a, b) -> a * right.len() + b`.
    pub(crate) fn product(left: &Labeling, right: &Labeling) -> Labeling {
        let dim = left.dim + right.dim;
        let mut coords = Vec::with_capacity(left.len() * right.len() * dim);
        for a in left.points() {
            for b in right.points() {
                coords.extend_from_slice(a);
                coords.extend_from_slice(b);
            }
        }
        Labeling { dim, coords }
    }

    pub fn check_injective(&self) -> Result<()> {
        let mut seen: HashMap<&[i64], Vertex> = HashMap::with_capacity(self.len());
        for (v, p) in self.points().enumerate() {
            if let Some(&u) = seen.get(p) {
                return Err(Error::LabelingNotInjective(u, v));
            }
            seen.insert(p, v);
        }
        Ok(())
    }

    /// Reverse lookup from coordinates to vertex ids.
    pub fn index(&self) -> HashMap<Vec<i64>, Vertex> {
        self.points()
            .enumerate()
            .map(|(v, p)| (p.to_vec(), v))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_repeated_points() {
        let err = Labeling::new(vec![vec![0, 0], vec![1, 0], vec![0, 0]]).unwrap_err();
        assert_eq!(err, Error::LabelingNotInjective(0, 2));
    }

    #[test]
    fn rejects_ragged_points() {
        assert!(Labeling::new(vec![vec![0, 0], vec![1]]).is_err());
    }

    #[test]
    fn product_order_matches_vertex_numbering() {
        let a = Labeling::new(vec![vec![0], vec![1]]).unwrap();
        let b = Labeling::new(vec![vec![0], vec![1], vec![2]]).unwrap();
        let p = Labeling::product(&a, &b);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.point(3 + 2), &[1, 2]);
    }
}
