//! Independent oracles shared by the integration tests. Nothing here calls
//! the crate's distance, betweenness or solver code.

#![allow(dead_code)]

use gpnet_core::generators::{
    benes, butterfly, lattice, primitive, LatticeKind, LatticeSpec, Primitive,
};
use gpnet_core::Graph;
use rand::Rng;

pub const INF: u32 = u32::MAX / 4;

/// All-pairs distances by Floyd–Warshall.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut d = vec![vec![INF; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Some vertex of the triple lies between the other two.
pub fn collinear(d: &[Vec<u32>], a: usize, b: usize, c: usize) -> bool {
    d[a][c] == d[a][b] + d[b][c] || d[a][b] == d[a][c] + d[c][b] || d[b][c] == d[b][a] + d[a][c]
}

pub fn is_gp(d: &[Vec<u32>], s: &[usize]) -> bool {
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            for k in j + 1..s.len() {
                if collinear(d, s[i], s[j], s[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Largest general position set containing `forced`, by enumerating every
/// general position set that extends it.
pub fn enumerate_max_gp(d: &[Vec<u32>], forced: &[usize]) -> Option<usize> {
    if !is_gp(d, forced) {
        return None;
    }
    let n = d.len();
    let mut chosen = forced.to_vec();
    let mut best = chosen.len();
    fn extend(
        d: &[Vec<u32>],
        n: usize,
        from: usize,
        chosen: &mut Vec<usize>,
        forced: &[usize],
        best: &mut usize,
    ) {
        *best = (*best).max(chosen.len());
        for v in from..n {
            if forced.contains(&v) {
                continue;
            }
            let ok = (0..chosen.len())
                .all(|i| (i + 1..chosen.len()).all(|j| !collinear(d, chosen[i], chosen[j], v)));
            if ok {
                chosen.push(v);
                extend(d, n, v + 1, chosen, forced, best);
                chosen.pop();
            }
        }
    }
    extend(d, n, 0, &mut chosen, forced, &mut best);
    Some(best)
}

/// Largest general position set by checking every subset (n <= 20).
pub fn subset_max_gp(d: &[Vec<u32>]) -> usize {
    let n = d.len();
    assert!(n <= 20);
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if is_gp(d, &s) {
            best = size;
        }
    }
    best
}

/// A random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges, format!("random-{n}")).unwrap()
}

pub fn lat(kind: LatticeKind, dims: &[usize]) -> Graph {
    lattice(&LatticeSpec::new(kind, dims.to_vec()).unwrap()).unwrap()
}

/// Small instances of every generator family.
pub fn zoo() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in [2, 3, 5, 8] {
        out.push(primitive(Primitive::Path, n).unwrap());
        out.push(primitive(Primitive::Complete, n).unwrap());
    }
    for n in [3, 4, 5, 7] {
        out.push(primitive(Primitive::Cycle, n).unwrap());
    }
    for kind in [
        LatticeKind::Cartesian,
        LatticeKind::Strong,
        LatticeKind::Triangular,
    ] {
        out.push(lat(kind, &[3, 4]));
        out.push(lat(kind, &[5, 5]));
    }
    out.push(lat(LatticeKind::Cartesian, &[3, 3, 3]));
    out.push(lat(LatticeKind::Torus, &[3, 5]));
    out.push(lat(LatticeKind::Torus, &[5, 5]));
    for r in [1, 2] {
        out.push(butterfly(r).unwrap());
        out.push(benes(r).unwrap());
    }
    out
}

/// L1 distance between coordinate tuples.
pub fn l1(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Chebyshev distance between coordinate tuples.
pub fn chebyshev(a: &[i64], b: &[i64]) -> i64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .max()
        .unwrap_or(0)
}

/// Monotone in the order given: every coordinate is non-strictly
/// increasing or non-strictly decreasing along the sequence.
pub fn monotone_in_order(points: &[&[i64]]) -> bool {
    let dim = points.first().map_or(0, |p| p.len());
    (0..dim).all(|k| {
        points.windows(2).all(|w| w[0][k] <= w[1][k])
            || points.windows(2).all(|w| w[0][k] >= w[1][k])
    })
}

/// Some ordering of the three points is monotone.
pub fn some_order_monotone(a: &[i64], b: &[i64], c: &[i64]) -> bool {
    [[a, b, c], [a, c, b], [b, a, c]]
        .iter()
        .any(|p| monotone_in_order(p))
}
