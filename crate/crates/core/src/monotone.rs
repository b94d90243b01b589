//! Monotone subsequences and monotone-geodesic labelings.
//!
//! Monotone is always non-strict here, with the direction chosen
//! independently for every coordinate.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geodesy::middle_of;
use crate::graph::{DistanceMatrix, Graph};
use crate::labeling::Labeling;
use crate::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Nondecreasing,
    Nonincreasing,
}

/// A monotone selection from a sequence.
///
/// For [`longest_monotone_subsequence`] the indices are increasing
/// positions. For [`monotone_point_triple`] they are listed in the order of
/// the monotone sequence (input points need not be sorted).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotoneWitness {
    pub indices: Vec<usize>,
    pub direction_per_coordinate: Vec<Direction>,
}

impl MonotoneWitness {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Lengths of the longest non-decreasing subsequence starting at each index.
fn longest_from(seq: &[i64]) -> Vec<usize> {
    // a non-decreasing run starting at i is a non-decreasing run of the
    // negated reverse ending at N-1-i
    let mut tails: Vec<i64> = Vec::new();
    let mut lengths = vec![0; seq.len()];
    for (k, &x) in seq.iter().rev().enumerate() {
        let key = -x;
        let pos = tails.partition_point(|&t| t <= key);
        if pos == tails.len() {
            tails.push(key);
        } else {
            tails[pos] = key;
        }
        lengths[seq.len() - 1 - k] = pos + 1;
    }
    lengths
}

/// Lexicographically smallest longest non-decreasing subsequence.
fn longest_nondecreasing(seq: &[i64]) -> Vec<usize> {
    let lengths = longest_from(seq);
    let Some(&best) = lengths.iter().max() else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(best);
    let mut need = best;
    let mut floor = i64::MIN;
    for (i, (&x, &len)) in seq.iter().zip(&lengths).enumerate() {
        if need == 0 {
            break;
        }
        if len == need && x >= floor {
            out.push(i);
            floor = x;
            need -= 1;
        }
    }
    out
}

/// The longer of the longest non-decreasing and the longest non-increasing
/// subsequence, in `O(N log N)`. Ties go to non-decreasing; among witnesses
/// of equal length the lexicographically smallest index set is returned.
pub fn longest_monotone_subsequence(seq: &[i64]) -> Result<MonotoneWitness> {
    if seq.is_empty() {
        return Err(Error::EmptyInput);
    }
    let up = longest_nondecreasing(seq);
    let negated: Vec<i64> = seq.iter().map(|&x| -x).collect();
    let down = longest_nondecreasing(&negated);
    let (indices, dir) = if down.len() > up.len() {
        (down, Direction::Nonincreasing)
    } else {
        (up, Direction::Nondecreasing)
    };
    Ok(MonotoneWitness {
        indices,
        direction_per_coordinate: vec![dir],
    })
}

/// Number of points that guarantees a monotone triple in `Z^dim` by
/// iterating the Erdős–Szekeres bound coordinate by coordinate.
pub fn points_needed_for_triple(dim: usize) -> usize {
    (1..dim).fold(3, |m, _| (m - 1) * (m - 1) + 1)
}

/// Extracts three points forming a monotone sequence.
///
/// Points are stably sorted by the first coordinate; each further
/// coordinate then keeps a monotone subsequence of the survivors, shrinking
/// from `points_needed_for_triple(dim)` down to 3. With exactly the minimum
/// number of points this is the constructive form of the pigeonhole
/// argument; extra points only help.
pub fn monotone_point_triple(points: &[Vec<i64>]) -> Result<MonotoneWitness> {
    let dim = points.first().map(Vec::len).ok_or(Error::EmptyInput)?;
    if dim == 0 || points.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidParameter(
            "points must share a positive dimension".into(),
        ));
    }
    let needed = points_needed_for_triple(dim);
    if points.len() < needed {
        return Err(Error::TooFewPoints {
            needed,
            got: points.len(),
        });
    }
    let mut survivors: Vec<usize> = (0..points.len()).collect();
    survivors.sort_by_key(|&i| points[i][0]);
    // target length after filtering each coordinate, last coordinate keeps 3
    let mut targets = vec![3usize; dim];
    for c in (1..dim.saturating_sub(1)).rev() {
        let m = targets[c + 1];
        targets[c] = (m - 1) * (m - 1) + 1;
    }
    if dim == 1 {
        survivors.truncate(3);
    }
    for (c, &target) in targets.iter().enumerate().skip(1) {
        let column: Vec<i64> = survivors.iter().map(|&i| points[i][c]).collect();
        let witness = longest_monotone_subsequence(&column)?;
        debug_assert!(witness.len() >= target);
        survivors = witness
            .indices
            .iter()
            .take(target)
            .map(|&k| survivors[k])
            .collect();
    }
    let chosen: Vec<&[i64]> = survivors.iter().map(|&i| points[i].as_slice()).collect();
    let direction_per_coordinate = (0..dim)
        .map(|c| {
            if chosen.windows(2).all(|w| w[0][c] <= w[1][c]) {
                Direction::Nondecreasing
            } else {
                Direction::Nonincreasing
            }
        })
        .collect();
    Ok(MonotoneWitness {
        indices: survivors,
        direction_per_coordinate,
    })
}

/// Every coordinate sequence is non-strictly monotone.
pub fn is_monotone<P: AsRef<[i64]>>(points: &[P]) -> bool {
    let Some(first) = points.first() else {
        return true;
    };
    (0..first.as_ref().len()).all(|c| {
        let col = || points.iter().map(|p| p.as_ref()[c]);
        let v: Vec<i64> = col().collect();
        v.windows(2).all(|w| w[0] <= w[1]) || v.windows(2).all(|w| w[0] >= w[1])
    })
}

/// Some ordering of the three points is a monotone sequence, i.e. one point
/// lies coordinate-wise between the other two.
pub fn triple_is_monotone(a: &[i64], b: &[i64], c: &[i64]) -> bool {
    let between = |lo: &[i64], mid: &[i64], hi: &[i64]| {
        lo.iter()
            .zip(mid)
            .zip(hi)
            .all(|((&x, &y), &z)| (x <= y && y <= z) || (x >= y && y >= z))
    };
    between(a, b, c) || between(b, a, c) || between(a, c, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelingVerdict {
    MonotoneGeodesic,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelingCertificate {
    pub verdict: LabelingVerdict,
    /// Vertex triple (sorted ids) with monotone labels but no common geodesic.
    pub counterexample: Option<[Vertex; 3]>,
}

pub const LABEL_CHECK_VERTEX_LIMIT: usize = 100;

/// Checks that every vertex triple with monotone labels lies on a common
/// geodesic; reports the lexicographically first violation. Graphs above
/// `max_vertices` are refused.
pub fn check_monotone_geodesic_labeling(
    g: &Graph,
    d: &DistanceMatrix,
    labeling: &Labeling,
    max_vertices: usize,
) -> Result<LabelingCertificate> {
    let n = g.n();
    if n > max_vertices {
        return Err(Error::TooLarge {
            what: "labeling check",
            size: n,
            limit: max_vertices,
        });
    }
    if labeling.dim() != 2 {
        return Err(Error::LabelingMismatch(format!(
            "labeling must be 2-dimensional, got {}",
            labeling.dim()
        )));
    }
    if labeling.len() != n {
        return Err(Error::LabelingMismatch(format!(
            "{} labels for {n} vertices",
            labeling.len()
        )));
    }
    labeling.check_injective()?;
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if triple_is_monotone(labeling.point(x), labeling.point(y), labeling.point(z))
                    && middle_of(d, x, y, z).is_none()
                {
                    return Ok(LabelingCertificate {
                        verdict: LabelingVerdict::Violated,
                        counterexample: Some([x, y, z]),
                    });
                }
            }
        }
    }
    Ok(LabelingCertificate {
        verdict: LabelingVerdict::MonotoneGeodesic,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{attach_labeling, lattice, LabelingScheme, LatticeKind, LatticeSpec};
    use crate::graph::all_pairs_distances;

    #[test]
    fn sorted_and_reversed() {
        let w = longest_monotone_subsequence(&[1, 2, 3]).unwrap();
        assert_eq!(w.indices, vec![0, 1, 2]);
        assert_eq!(w.direction_per_coordinate, vec![Direction::Nondecreasing]);
        let w = longest_monotone_subsequence(&[5, 4, 3, 2, 1]).unwrap();
        assert_eq!(w.indices, vec![0, 1, 2, 3, 4]);
        assert_eq!(w.direction_per_coordinate, vec![Direction::Nonincreasing]);
    }

    #[test]
    fn guarantee_on_digits_of_pi() {
        let seq = [3, 1, 4, 1, 5, 9, 2, 6];
        let w = longest_monotone_subsequence(&seq).unwrap();
        assert!(w.len() >= 3);
        // 1,1,2,6 / 1,4,5,9 / 3,4,5,9 all have length 4; smallest index set is 0,2,4,5
        assert_eq!(w.indices, vec![0, 2, 4, 5]);
    }

    #[test]
    fn non_strict_and_ties() {
        let w = longest_monotone_subsequence(&[2, 2, 2]).unwrap();
        assert_eq!(w.indices, vec![0, 1, 2]);
        assert_eq!(w.direction_per_coordinate, vec![Direction::Nondecreasing]);
        let w = longest_monotone_subsequence(&[2, 1]).unwrap();
        assert_eq!(w.indices, vec![0, 1]);
        assert_eq!(w.direction_per_coordinate, vec![Direction::Nonincreasing]);
        let w = longest_monotone_subsequence(&[7]).unwrap();
        assert_eq!(w.indices, vec![0]);
        assert!(longest_monotone_subsequence(&[]).is_err());
    }

    #[test]
    fn plane_example_triple() {
        let pts = vec![vec![1, 4], vec![2, 3], vec![3, 5], vec![3, 2], vec![5, 3]];
        let w = monotone_point_triple(&pts).unwrap();
        assert_eq!(w.len(), 3);
        let chosen: Vec<_> = w.indices.iter().map(|&i| pts[i].clone()).collect();
        assert!(is_monotone(&chosen));
    }

    #[test]
    fn triple_needs_enough_points() {
        let pts = vec![vec![0, 0]; 4];
        assert_eq!(
            monotone_point_triple(&pts).unwrap_err(),
            Error::TooFewPoints { needed: 5, got: 4 }
        );
        let pts = vec![vec![0, 0, 0]; 16];
        assert!(monotone_point_triple(&pts).is_err());
        assert_eq!(points_needed_for_triple(2), 5);
        assert_eq!(points_needed_for_triple(3), 17);
        assert_eq!(points_needed_for_triple(4), 257);
    }

    #[test]
    fn monotone_examples() {
        assert!(is_monotone(&[[1, 4], [2, 4], [5, 3], [5, 2], [6, 1]]));
        assert!(is_monotone(&[[0, 0], [2, 1], [3, 4], [5, 5]]));
        assert!(!is_monotone(&[[0, 0], [1, 2], [2, 1]]));
        assert!(is_monotone::<[i64; 2]>(&[]));
    }

    #[test]
    fn triple_monotone_any_order() {
        // decreasing y inside an x tie: lexicographic sorting alone would miss it
        assert!(triple_is_monotone(&[0, 1], &[0, 2], &[1, 0]));
        assert!(!triple_is_monotone(&[0, 0], &[1, 2], &[2, 1]));
    }

    fn check(kind: LatticeKind, n: usize, scheme: LabelingScheme) -> LabelingCertificate {
        let g = lattice(&LatticeSpec::new(kind, vec![n, n]).unwrap()).unwrap();
        let g = attach_labeling(&g, scheme).unwrap();
        let d = all_pairs_distances(&g);
        check_monotone_geodesic_labeling(&g, &d, g.labels().unwrap(), LABEL_CHECK_VERTEX_LIMIT)
            .unwrap()
    }

    #[test]
    fn labeling_checks() {
        use LabelingScheme::*;
        assert_eq!(
            check(LatticeKind::Cartesian, 6, Natural).verdict,
            LabelingVerdict::MonotoneGeodesic
        );
        assert_eq!(
            check(LatticeKind::Strong, 6, Natural).verdict,
            LabelingVerdict::Violated
        );
        assert_eq!(
            check(LatticeKind::Strong, 6, Rotated).verdict,
            LabelingVerdict::MonotoneGeodesic
        );
        assert_eq!(
            check(LatticeKind::Triangular, 5, Natural).verdict,
            LabelingVerdict::Violated
        );
        assert_eq!(
            check(LatticeKind::Triangular, 5, Rotated).verdict,
            LabelingVerdict::Violated
        );
    }

    #[test]
    fn labeling_check_errors() {
        let g = lattice(&LatticeSpec::new(LatticeKind::Cartesian, vec![11, 11]).unwrap()).unwrap();
        let d = all_pairs_distances(&g);
        assert!(matches!(
            check_monotone_geodesic_labeling(&g, &d, g.labels().unwrap(), LABEL_CHECK_VERTEX_LIMIT),
            Err(Error::TooLarge { .. })
        ));
        let g = lattice(&LatticeSpec::new(LatticeKind::Cartesian, vec![2, 2, 2]).unwrap()).unwrap();
        let d = all_pairs_distances(&g);
        assert!(matches!(
            check_monotone_geodesic_labeling(&g, &d, g.labels().unwrap(), LABEL_CHECK_VERTEX_LIMIT),
            Err(Error::LabelingMismatch(_))
        ));
    }
}
