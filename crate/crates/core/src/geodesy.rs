//! Geodesic betweenness, general position certificates and isometric path
//! covers.
//!
//! Three vertices lie on a common geodesic exactly when one of them is
//! between the other two, i.e. `d(x, z) = d(x, y) + d(y, z)` for some
//! ordering. Everything here works off a precomputed [`DistanceMatrix`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{benes_node, benes_vertex, bit_mask, ButterflyNode};
use crate::graph::{DistanceMatrix, Graph};
use crate::Vertex;

/// Returns the vertex of the triple lying between the other two, if any.
#[inline]
pub fn middle_of(d: &DistanceMatrix, a: Vertex, b: Vertex, c: Vertex) -> Option<Vertex> {
    if d.is_between(a, b, c) {
        Some(b)
    } else if d.is_between(b, a, c) {
        Some(a)
    } else if d.is_between(a, c, b) {
        Some(c)
    } else {
        None
    }
}

/// Whether `a`, `b`, `c` lie on a common geodesic.
pub fn lies_on_common_geodesic(
    d: &DistanceMatrix,
    a: Vertex,
    b: Vertex,
    c: Vertex,
) -> Result<bool> {
    for v in [a, b, c] {
        check_vertex(d, v)?;
    }
    if a == b || b == c || a == c {
        return Err(Error::NotDistinct(vec![a, b, c]));
    }
    Ok(middle_of(d, a, b, c).is_some())
}

fn check_vertex(d: &DistanceMatrix, v: Vertex) -> Result<()> {
    if v >= d.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: d.n(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    GeneralPosition,
    Violated,
}

/// Verdict for a vertex set.
///
/// A violating triple is stored as `[a, b, c]` with `b` between `a` and `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GpCertificate {
    pub verdict: Verdict,
    pub violating_triple: Option<[Vertex; 3]>,
    pub separation_k: Option<u32>,
}

impl GpCertificate {
    pub fn is_general_position(&self) -> bool {
        self.verdict == Verdict::GeneralPosition
    }
}

/// Sorted, deduplicated copy of `s` with every id range-checked.
fn canonical_set(d: &DistanceMatrix, s: &[Vertex]) -> Result<Vec<Vertex>> {
    for &v in s {
        check_vertex(d, v)?;
    }
    let mut set = s.to_vec();
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

/// Scans every triple of `s`; reports the lexicographically first collinear
/// triple (by sorted vertex ids).
pub fn verify_general_position(d: &DistanceMatrix, s: &[Vertex]) -> Result<GpCertificate> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    let set = canonical_set(d, s)?;
    for (i, &a) in set.iter().enumerate() {
        for (j, &b) in set.iter().enumerate().skip(i + 1) {
            for &c in &set[j + 1..] {
                if let Some(mid) = middle_of(d, a, b, c) {
                    let triple = match mid {
                        m if m == b => [a, b, c],
                        m if m == a => [b, a, c],
                        _ => [a, c, b],
                    };
                    return Ok(GpCertificate {
                        verdict: Verdict::Violated,
                        violating_triple: Some(triple),
                        separation_k: None,
                    });
                }
            }
        }
    }
    Ok(GpCertificate {
        verdict: Verdict::GeneralPosition,
        violating_triple: None,
        separation_k: separation_witness(d, &set),
    })
}

/// Smallest `k` with `k <= d(x, y) < 2k` for all distinct `x, y` in `s`.
///
/// Such a set is always in general position: a middle vertex would force a
/// distance of at least `2k`.
pub fn separation_witness(d: &DistanceMatrix, s: &[Vertex]) -> Option<u32> {
    let mut set = s.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() < 2 || set.iter().any(|&v| v >= d.n()) {
        return None;
    }
    let (mut lo, mut hi) = (u32::MAX, 0);
    for (i, &x) in set.iter().enumerate() {
        for &y in &set[i + 1..] {
            let dist = d.get(x, y);
            lo = lo.min(dist);
            hi = hi.max(dist);
        }
    }
    let k = hi / 2 + 1;
    (k <= lo).then_some(k)
}

/// Geodesics from a common root whose vertices cover the whole graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsometricPathCover {
    pub root: Vertex,
    pub paths: Vec<Vec<Vertex>>,
}

impl IsometricPathCover {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// Greedy cover from `root`: repeatedly takes the geodesic from `root`
/// covering the most uncovered vertices (ties: smallest endpoint, then the
/// lexicographically smallest path).
pub fn greedy_isometric_cover_from(
    g: &Graph,
    d: &DistanceMatrix,
    root: Vertex,
) -> Result<IsometricPathCover> {
    check_vertex(d, root)?;
    let n = g.n();
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&u| (d.get(root, u), u));
    let mut uncovered = vec![true; n];
    let mut remaining = n;
    let mut paths = Vec::new();
    while remaining > 0 {
        let mut gain = vec![0usize; n];
        let mut best_path: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for &u in &order {
            let mut pick: Option<Vertex> = None;
            for &p in g.neighbors(u) {
                if d.get(root, p) + 1 != d.get(root, u) {
                    continue;
                }
                let better = match pick {
                    None => true,
                    Some(q) => gain[p]
                        .cmp(&gain[q])
                        .then_with(|| best_path[q].cmp(&best_path[p]))
                        .is_gt(),
                };
                if better {
                    pick = Some(p);
                }
            }
            let mut path = pick.map(|p| best_path[p].clone()).unwrap_or_default();
            gain[u] = pick.map_or(0, |p| gain[p]) + usize::from(uncovered[u]);
            path.push(u);
            best_path[u] = path;
        }
        // smallest endpoint wins among equal gains
        let end = g
            .vertices()
            .max_by(|&a, &b| gain[a].cmp(&gain[b]).then(b.cmp(&a)))
            .expect("graph is nonempty");
        debug_assert!(gain[end] > 0);
        let path = std::mem::take(&mut best_path[end]);
        for &v in &path {
            if uncovered[v] {
                uncovered[v] = false;
                remaining -= 1;
            }
        }
        paths.push(path);
    }
    Ok(IsometricPathCover { root, paths })
}

/// Checks that every path starts at the root, is a geodesic, and that the
/// paths jointly cover all vertices.
pub fn verify_isometric_cover(g: &Graph, d: &DistanceMatrix, cover: &IsometricPathCover) -> bool {
    let n = g.n();
    if cover.root >= n || d.n() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for path in &cover.paths {
        if path.first() != Some(&cover.root) || path.iter().any(|&v| v >= n) {
            return false;
        }
        if path.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return false;
        }
        let last = *path.last().expect("nonempty");
        if d.get(cover.root, last) as usize != path.len() - 1 {
            return false;
        }
        for &v in path {
            seen[v] = true;
        }
    }
    seen.into_iter().all(|s| s)
}

pub const EXACT_COVER_VERTEX_LIMIT: usize = 12;

/// Minimum number of geodesics from `root` covering the graph, by
/// breadth-first search over covered-vertex masks.
pub fn exact_isometric_cover_size(g: &Graph, d: &DistanceMatrix, root: Vertex) -> Result<usize> {
    check_vertex(d, root)?;
    let n = g.n();
    if n > EXACT_COVER_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "exact isometric path cover",
            size: n,
            limit: EXACT_COVER_VERTEX_LIMIT,
        });
    }
    // masks of every geodesic from root, grown layer by layer
    let mut ending_at: Vec<Vec<u32>> = vec![Vec::new(); n];
    ending_at[root].push(1 << root);
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&u| d.get(root, u));
    for &u in &order[1..] {
        let mut masks = Vec::new();
        for &p in g.neighbors(u) {
            if d.get(root, p) + 1 == d.get(root, u) {
                masks.extend(ending_at[p].iter().map(|m| m | (1 << u)));
            }
        }
        masks.sort_unstable();
        masks.dedup();
        ending_at[u] = masks;
    }
    let mut geodesics: Vec<u32> = ending_at.into_iter().flatten().collect();
    geodesics.sort_unstable();
    geodesics.dedup();
    let full = (1u32 << n) - 1;
    let mut dist = vec![usize::MAX; 1 << n];
    dist[0] = 0;
    let mut frontier = vec![0u32];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for mask in frontier {
            for &geo in &geodesics {
                let m = mask | geo;
                if dist[m as usize] == usize::MAX {
                    dist[m as usize] = dist[mask as usize] + 1;
                    if m == full {
                        return Ok(dist[m as usize]);
                    }
                    next.push(m);
                }
            }
        }
        frontier = next;
    }
    unreachable!("geodesics from the root reach every vertex of a connected graph")
}

/// The recursive cover `Ψ_w` of the Beneš network `BN(r)` from a degree-2
/// vertex `w`: one geodesic from `w` to every other degree-2 vertex.
pub fn benes_cover(r: u32, w: Vertex) -> Result<IsometricPathCover> {
    crate::generators::benes(r)?;
    let width = 1usize << r;
    if w >= width * (2 * r as usize + 1) {
        return Err(Error::VertexOutOfRange {
            vertex: w,
            n: width * (2 * r as usize + 1),
        });
    }
    let node = benes_node(r, w);
    if node.level != 0 && node.level != 2 * r {
        return Err(Error::NotDegreeTwo(w));
    }
    let mut paths = benes_cover_from_bottom(r, node.column);
    if node.level == 2 * r {
        for path in &mut paths {
            for n in path.iter_mut() {
                n.level = 2 * r - n.level;
            }
        }
    }
    let mut paths: Vec<Vec<Vertex>> = paths
        .into_iter()
        .map(|p| p.into_iter().map(|n| benes_vertex(r, n)).collect())
        .collect();
    paths.sort_by_key(|p| *p.last().expect("nonempty"));
    Ok(IsometricPathCover { root: w, paths })
}

fn benes_cover_from_bottom(r: u32, column: u32) -> Vec<Vec<ButterflyNode>> {
    let at = |column, level| ButterflyNode { column, level };
    if r == 1 {
        let (c, o) = (column, column ^ 1);
        return vec![
            vec![at(c, 0), at(c, 1), at(o, 0)],
            vec![at(c, 0), at(c, 1), at(c, 2)],
            vec![at(c, 0), at(o, 1), at(o, 2)],
        ];
    }
    let top = bit_mask(r, 1);
    let low = column & (top - 1);
    let sub = benes_cover_from_bottom(r - 1, low);
    let w = at(column, 0);
    let mut out = Vec::with_capacity(sub.len() * 2 + 1);
    // the two BN(r-1) copies left after deleting levels 0 and 2r differ in the top bit
    for top_bit in [column & top, (column & top) ^ top] {
        for sub_path in &sub {
            let mut path = Vec::with_capacity(sub_path.len() + 2);
            path.push(w);
            path.extend(sub_path.iter().map(|n| at(n.column | top_bit, n.level + 1)));
            let end = *path.last().expect("nonempty");
            // straight edge out to the degree-2 terminus
            let exit = if end.level == 1 { 0 } else { 2 * r };
            path.push(at(end.column, exit));
            out.push(path);
        }
    }
    let other = column ^ top;
    out.push(vec![w, at(other, 1), at(other, 0)]);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Bounds only general position sets containing the root.
    CoverConditional,
    /// Bounds `gp(G)`.
    CoverGlobal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: usize,
    pub root: Option<Vertex>,
}

impl BoundReport {
    /// `|R| <= |cover| + 1` for every general position set `R` containing the
    /// cover's root.
    pub fn from_cover(cover: &IsometricPathCover) -> Self {
        BoundReport {
            kind: BoundKind::CoverConditional,
            value: cover.len() + 1,
            root: Some(cover.root),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    Conditional(Vertex),
    Global,
}

/// Cover-based upper bound from greedy isometric path covers.
pub fn gp_upper_bound(g: &Graph, d: &DistanceMatrix, mode: BoundMode) -> Result<BoundReport> {
    match mode {
        BoundMode::Conditional(v) => Ok(BoundReport::from_cover(&greedy_isometric_cover_from(
            g, d, v,
        )?)),
        BoundMode::Global => {
            let sizes = cover_sizes(g, d)?;
            let value = sizes.into_iter().max().unwrap_or(0) + 1;
            Ok(BoundReport {
                kind: BoundKind::CoverGlobal,
                value,
                root: None,
            })
        }
    }
}

fn cover_sizes(g: &Graph, d: &DistanceMatrix) -> Result<Vec<usize>> {
    let roots: Vec<Vertex> = g.vertices().collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        roots
            .par_iter()
            .map(|&v| greedy_isometric_cover_from(g, d, v).map(|c| c.len()))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    roots
        .iter()
        .map(|&v| greedy_isometric_cover_from(g, d, v).map(|c| c.len()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{benes, lattice, primitive, LatticeKind, LatticeSpec, Primitive};
    use crate::graph::all_pairs_distances;

    fn patch(kind: LatticeKind, dims: &[usize]) -> Graph {
        lattice(&LatticeSpec::new(kind, dims.to_vec()).unwrap()).unwrap()
    }

    fn at(g: &Graph, coords: &[i64]) -> Vertex {
        g.lattice().unwrap().vertex_at(coords).unwrap()
    }

    #[test]
    fn betweenness_examples() {
        let p5 = primitive(Primitive::Path, 5).unwrap();
        assert!(lies_on_common_geodesic(&all_pairs_distances(&p5), 0, 2, 4).unwrap());
        let strong = patch(LatticeKind::Strong, &[6, 6]);
        let d = all_pairs_distances(&strong);
        let (a, b, c) = (
            at(&strong, &[0, 0]),
            at(&strong, &[2, 1]),
            at(&strong, &[3, 4]),
        );
        assert!(!lies_on_common_geodesic(&d, a, b, c).unwrap());
        let c6 = primitive(Primitive::Cycle, 6).unwrap();
        assert!(!lies_on_common_geodesic(&all_pairs_distances(&c6), 0, 2, 4).unwrap());
    }

    #[test]
    fn betweenness_errors() {
        let p5 = primitive(Primitive::Path, 5).unwrap();
        let d = all_pairs_distances(&p5);
        assert!(matches!(
            lies_on_common_geodesic(&d, 0, 0, 4),
            Err(Error::NotDistinct(_))
        ));
        assert!(matches!(
            lies_on_common_geodesic(&d, 0, 1, 5),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn certificate_on_path() {
        let p5 = primitive(Primitive::Path, 5).unwrap();
        let d = all_pairs_distances(&p5);
        let cert = verify_general_position(&d, &[4, 0, 2]).unwrap();
        assert_eq!(cert.verdict, Verdict::Violated);
        assert_eq!(cert.violating_triple, Some([0, 2, 4]));
        assert!(verify_general_position(&d, &[1, 3])
            .unwrap()
            .is_general_position());
        assert!(verify_general_position(&d, &[3])
            .unwrap()
            .is_general_position());
        assert!(verify_general_position(&d, &[]).is_err());
        assert!(verify_general_position(&d, &[9]).is_err());
    }

    #[test]
    fn strong_corners() {
        let g = patch(LatticeKind::Strong, &[3, 3]);
        let d = all_pairs_distances(&g);
        let corners = [
            at(&g, &[0, 0]),
            at(&g, &[0, 2]),
            at(&g, &[2, 0]),
            at(&g, &[2, 2]),
        ];
        let cert = verify_general_position(&d, &corners).unwrap();
        assert!(cert.is_general_position());
        assert_eq!(cert.separation_k, Some(2));
    }

    #[test]
    fn separation_examples() {
        let k4 = primitive(Primitive::Complete, 4).unwrap();
        assert_eq!(
            separation_witness(&all_pairs_distances(&k4), &[0, 1, 2, 3]),
            Some(1)
        );
        let p5 = primitive(Primitive::Path, 5).unwrap();
        assert_eq!(
            separation_witness(&all_pairs_distances(&p5), &[0, 2, 4]),
            None
        );
        assert_eq!(separation_witness(&all_pairs_distances(&p5), &[0]), None);
    }

    #[test]
    fn greedy_covers() {
        let p5 = primitive(Primitive::Path, 5).unwrap();
        let d = all_pairs_distances(&p5);
        let cover = greedy_isometric_cover_from(&p5, &d, 0).unwrap();
        assert_eq!(cover.paths, vec![vec![0, 1, 2, 3, 4]]);

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)], "K1,3").unwrap();
        let d = all_pairs_distances(&star);
        let cover = greedy_isometric_cover_from(&star, &d, 1).unwrap();
        assert_eq!(cover.paths, vec![vec![1, 0, 2], vec![1, 0, 3]]);
        assert!(verify_isometric_cover(&star, &d, &cover));

        let c6 = primitive(Primitive::Cycle, 6).unwrap();
        let d = all_pairs_distances(&c6);
        for v in 0..6 {
            let cover = greedy_isometric_cover_from(&c6, &d, v).unwrap();
            assert_eq!(cover.len(), 2);
            assert!(verify_isometric_cover(&c6, &d, &cover));
        }
        assert_eq!(
            greedy_isometric_cover_from(&c6, &d, 0).unwrap().paths[0],
            vec![0, 1, 2, 3]
        );
    }

    #[test]
    fn cover_rejections() {
        let c6 = primitive(Primitive::Cycle, 6).unwrap();
        let d = all_pairs_distances(&c6);
        let missing = IsometricPathCover {
            root: 0,
            paths: vec![vec![0, 1, 2, 3], vec![0, 5]],
        };
        assert!(!verify_isometric_cover(&c6, &d, &missing));
        let long_way = IsometricPathCover {
            root: 0,
            paths: vec![vec![0, 5, 4, 3], vec![0, 1, 2, 3]],
        };
        assert!(verify_isometric_cover(&c6, &d, &long_way));
        let detour = IsometricPathCover {
            root: 0,
            paths: vec![vec![0, 1, 2, 3], vec![0, 5, 4, 3, 2]],
        };
        assert!(!verify_isometric_cover(&c6, &d, &detour));
        // 4-hop walk between vertices at distance 2
        let walk = IsometricPathCover {
            root: 1,
            paths: vec![vec![1, 0, 5, 4, 3], vec![1, 2]],
        };
        assert!(!verify_isometric_cover(&c6, &d, &walk));
    }

    #[test]
    fn exact_cover_sizes() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)], "K1,3").unwrap();
        assert_eq!(
            exact_isometric_cover_size(&star, &all_pairs_distances(&star), 1).unwrap(),
            2
        );
        let c6 = primitive(Primitive::Cycle, 6).unwrap();
        assert_eq!(
            exact_isometric_cover_size(&c6, &all_pairs_distances(&c6), 3).unwrap(),
            2
        );
        let big = primitive(Primitive::Path, 13).unwrap();
        assert!(exact_isometric_cover_size(&big, &all_pairs_distances(&big), 0).is_err());
    }

    #[test]
    fn benes_cover_counts() {
        for r in 1..=4u32 {
            let g = benes(r).unwrap();
            let d = all_pairs_distances(&g);
            for w in g.vertices().filter(|&v| g.degree(v) == 2) {
                let cover = benes_cover(r, w).unwrap();
                assert_eq!(cover.len(), (1 << (r + 1)) - 1, "r={r} w={w}");
                assert!(verify_isometric_cover(&g, &d, &cover), "r={r} w={w}");
                let mut ends: Vec<_> = cover.paths.iter().map(|p| *p.last().unwrap()).collect();
                ends.dedup();
                assert_eq!(ends.len(), cover.len());
                assert!(ends.iter().all(|&e| e != w && g.degree(e) == 2));
            }
        }
        assert_eq!(benes_cover(2, 4).unwrap_err(), Error::NotDegreeTwo(4));
        assert!(benes_cover(0, 0).is_err());
    }

    #[test]
    fn bounds() {
        let g = benes(3).unwrap();
        let cover = benes_cover(3, 0).unwrap();
        assert_eq!(BoundReport::from_cover(&cover).value, 16);
        let p5 = primitive(Primitive::Path, 5).unwrap();
        let d = all_pairs_distances(&p5);
        assert_eq!(
            gp_upper_bound(&p5, &d, BoundMode::Conditional(0))
                .unwrap()
                .value,
            2
        );
        let c6 = primitive(Primitive::Cycle, 6).unwrap();
        let d = all_pairs_distances(&c6);
        let global = gp_upper_bound(&c6, &d, BoundMode::Global).unwrap();
        assert_eq!(
            (global.kind, global.value, global.root),
            (BoundKind::CoverGlobal, 3, None)
        );
        assert_eq!(g.n(), 56);
    }
}
