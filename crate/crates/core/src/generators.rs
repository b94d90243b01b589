//! Constructors for the network families: paths, cycles, complete graphs,
//! Cartesian and strong products, lattices, tori, butterflies and Beneš
//! networks.
//!
//! Numbering is canonical everywhere: a product vertex `(a, b)` is
//! `a * |V(h)| + b`, lattice vertices are ordered lexicographically by
//! coordinates, and butterfly-type nodes `<w, level>` are
//! `level_index * 2^r + w`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::labeling::Labeling;
use crate::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Primitive {
    Path,
    Cycle,
    Complete,
}

/// `P_n`, `C_n` or `K_n` with the 1-dim labeling `i -> (i)`.
pub fn primitive(kind: Primitive, n: usize) -> Result<Graph> {
    let min = match kind {
        Primitive::Path | Primitive::Complete => 1,
        Primitive::Cycle => 3,
    };
    if n < min {
        return Err(Error::InvalidParameter(format!(
            "{kind:?} needs n >= {min}, got {n}"
        )));
    }
    let (edges, name): (Vec<_>, _) = match kind {
        Primitive::Path => ((1..n).map(|i| (i - 1, i)).collect(), format!("P{n}")),
        Primitive::Cycle => ((0..n).map(|i| (i, (i + 1) % n)).collect(), format!("C{n}")),
        Primitive::Complete => (
            (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect(),
            format!("K{n}"),
        ),
    };
    let labels = Labeling::from_flat(1, (0..n as i64).collect());
    Graph::from_edges(n, &edges, name)?.with_labels(Some(labels))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Cartesian,
    Strong,
}

/// Cartesian or strong product; labels are concatenated when both factors
/// carry them.
pub fn product(kind: ProductKind, g: &Graph, h: &Graph) -> Graph {
    let m = h.n();
    let id = |a: Vertex, b: Vertex| a * m + b;
    let mut edges = Vec::new();
    for a in g.vertices() {
        for (b, b2) in h.edges() {
            edges.push((id(a, b), id(a, b2)));
        }
    }
    for (a, a2) in g.edges() {
        for b in h.vertices() {
            edges.push((id(a, b), id(a2, b)));
        }
    }
    if kind == ProductKind::Strong {
        for (a, a2) in g.edges() {
            for (b, b2) in h.edges() {
                edges.push((id(a, b), id(a2, b2)));
                edges.push((id(a, b2), id(a2, b)));
            }
        }
    }
    let op = match kind {
        ProductKind::Cartesian => "□",
        ProductKind::Strong => "⊠",
    };
    let labels = match (g.labels(), h.labels()) {
        (Some(a), Some(b)) => Some(Labeling::product(a, b)),
        _ => None,
    };
    // Products of connected simple graphs are connected and simple.
    Graph::from_edges(g.n() * m, &edges, format!("{}{op}{}", g.name(), h.name()))
        .and_then(|p| p.with_labels(labels))
        .expect("product of valid graphs is valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Cartesian,
    Strong,
    Triangular,
    Torus,
}

/// Shape of a finite lattice patch.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeSpec {
    kind: LatticeKind,
    dims: Vec<usize>,
}

impl LatticeSpec {
    pub fn new(kind: LatticeKind, dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "lattice extents must be positive: {dims:?}"
            )));
        }
        if kind != LatticeKind::Cartesian && dims.len() != 2 {
            return Err(Error::InvalidParameter(format!(
                "{kind:?} lattice needs exactly 2 extents, got {}",
                dims.len()
            )));
        }
        if kind == LatticeKind::Torus && dims.iter().any(|&e| e < 3) {
            return Err(Error::InvalidParameter(format!(
                "torus extents must be >= 3: {dims:?}"
            )));
        }
        Ok(LatticeSpec { kind, dims })
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.iter().product()
    }

    /// Mixed-radix coordinates of a vertex id.
    pub fn coords_of(&self, mut v: Vertex) -> Vec<i64> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &extent) in out.iter_mut().zip(&self.dims).rev() {
            *slot = (v % extent) as i64;
            v /= extent;
        }
        out
    }

    /// Vertex id of a coordinate tuple, if it lies inside the patch.
    pub fn vertex_at(&self, coords: &[i64]) -> Option<Vertex> {
        if coords.len() != self.dims.len() {
            return None;
        }
        let mut v = 0;
        for (&c, &extent) in coords.iter().zip(&self.dims) {
            if c < 0 || c as usize >= extent {
                return None;
            }
            v = v * extent + c as usize;
        }
        Some(v)
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            LatticeKind::Cartesian => "cartesian",
            LatticeKind::Strong => "strong",
            LatticeKind::Triangular => "triangular",
            LatticeKind::Torus => "torus",
        };
        let dims: Vec<_> = self.dims.iter().map(usize::to_string).collect();
        write!(f, "{kind}:{}", dims.join("x"))
    }
}

/// Builds the patch described by `spec`, carrying its natural labeling.
pub fn lattice(spec: &LatticeSpec) -> Result<Graph> {
    let dims = spec.dims();
    let graph = match spec.kind() {
        LatticeKind::Cartesian => {
            let mut g = primitive(Primitive::Path, dims[0])?;
            for &extent in &dims[1..] {
                g = product(
                    ProductKind::Cartesian,
                    &g,
                    &primitive(Primitive::Path, extent)?,
                );
            }
            g
        }
        LatticeKind::Strong => product(
            ProductKind::Strong,
            &primitive(Primitive::Path, dims[0])?,
            &primitive(Primitive::Path, dims[1])?,
        ),
        LatticeKind::Torus => product(
            ProductKind::Cartesian,
            &primitive(Primitive::Cycle, dims[0])?,
            &primitive(Primitive::Cycle, dims[1])?,
        ),
        LatticeKind::Triangular => triangular(dims[0], dims[1])?,
    };
    Ok(graph
        .with_name(spec.to_string())
        .with_lattice(Some(spec.clone())))
}

/// Square grid plus the `(+1, +1)` diagonal of every unit square.
fn triangular(rows: usize, cols: usize) -> Result<Graph> {
    let id = |i: usize, j: usize| i * cols + j;
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if i + 1 < rows {
                edges.push((id(i, j), id(i + 1, j)));
            }
            if j + 1 < cols {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < rows && j + 1 < cols {
                edges.push((id(i, j), id(i + 1, j + 1)));
            }
        }
    }
    let coords = (0..rows)
        .flat_map(|i| (0..cols).flat_map(move |j| [i as i64, j as i64]))
        .collect();
    Graph::from_edges(rows * cols, &edges, "triangular")?
        .with_labels(Some(Labeling::from_flat(2, coords)))
}

/// A node `<w, level>` of a butterfly or Beneš network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ButterflyNode {
    pub column: u32,
    pub level: u32,
}

const MAX_BUTTERFLY_DIM: u32 = 16;

fn check_dimension(r: u32) -> Result<()> {
    if !(1..=MAX_BUTTERFLY_DIM).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "network dimension must be in 1..={MAX_BUTTERFLY_DIM}, got {r}"
        )));
    }
    Ok(())
}

/// Mask of bit `position` (1-indexed from the most significant) of an r-bit word.
pub fn bit_mask(r: u32, position: u32) -> u32 {
    debug_assert!((1..=r).contains(&position));
    1 << (r - position)
}

/// Levels `1..=r+1`; between levels `i` and `i+1` cross edges flip bit `i`.
pub fn butterfly(r: u32) -> Result<Graph> {
    check_dimension(r)?;
    let width = 1usize << r;
    let id = |level: u32, w: usize| (level as usize - 1) * width + w;
    let mut edges = Vec::new();
    for level in 1..=r {
        let mask = bit_mask(r, level) as usize;
        for w in 0..width {
            edges.push((id(level, w), id(level + 1, w)));
            edges.push((id(level, w), id(level + 1, w ^ mask)));
        }
    }
    let n = width * (r as usize + 1);
    let coords = (0..n)
        .flat_map(|v| [(v % width) as i64, (v / width) as i64 + 1])
        .collect();
    Graph::from_edges(n, &edges, format!("BF({r})"))?
        .with_labels(Some(Labeling::from_flat(2, coords)))
}

/// Bit flipped by cross edges between Beneš levels `t - 1` and `t`.
pub fn benes_flipped_bit(r: u32, t: u32) -> u32 {
    debug_assert!((1..=2 * r).contains(&t));
    if t <= r {
        t
    } else {
        2 * r - t + 1
    }
}

pub fn benes_vertex(r: u32, node: ButterflyNode) -> Vertex {
    node.level as usize * (1usize << r) + node.column as usize
}

pub fn benes_node(r: u32, v: Vertex) -> ButterflyNode {
    let width = 1usize << r;
    ButterflyNode {
        column: (v % width) as u32,
        level: (v / width) as u32,
    }
}

/// Two r-dim butterflies glued back to back; levels `0..=2r`, the shared
/// middle level is `r`.
pub fn benes(r: u32) -> Result<Graph> {
    check_dimension(r)?;
    let width = 1u32 << r;
    let mut edges = Vec::new();
    for t in 1..=2 * r {
        let mask = bit_mask(r, benes_flipped_bit(r, t));
        for w in 0..width {
            let from = benes_vertex(
                r,
                ButterflyNode {
                    column: w,
                    level: t - 1,
                },
            );
            edges.push((
                from,
                benes_vertex(
                    r,
                    ButterflyNode {
                        column: w,
                        level: t,
                    },
                ),
            ));
            edges.push((
                from,
                benes_vertex(
                    r,
                    ButterflyNode {
                        column: w ^ mask,
                        level: t,
                    },
                ),
            ));
        }
    }
    let n = width as usize * (2 * r as usize + 1);
    let coords = (0..n)
        .flat_map(|v| {
            let node = benes_node(r, v);
            [node.column as i64, node.level as i64]
        })
        .collect();
    Graph::from_edges(n, &edges, format!("BN({r})"))?
        .with_labels(Some(Labeling::from_flat(2, coords)))
}

/// Embedding of `BN(r-1)` into the half of `BN(r)` whose columns have the
/// given top bit, after deleting levels `0` and `2r`: sub node `<w, l>` maps
/// to `<top_bit w, l + 1>`. Entry `i` is the image of sub vertex `i`.
pub fn benes_half_embedding(r: u32, top_bit: bool) -> Result<Vec<Vertex>> {
    check_dimension(r)?;
    if r < 2 {
        return Err(Error::InvalidParameter(
            "halves exist only for r >= 2".into(),
        ));
    }
    let sub_n = (1usize << (r - 1)) * (2 * r as usize - 1);
    let high = if top_bit { bit_mask(r, 1) } else { 0 };
    Ok((0..sub_n)
        .map(|v| {
            let node = benes_node(r - 1, v);
            benes_vertex(
                r,
                ButterflyNode {
                    column: node.column | high,
                    level: node.level + 1,
                },
            )
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelingScheme {
    /// `(i, j) -> (i, j)`.
    Natural,
    /// `(i, j) -> (i + j, j - i)`: the 45° rotation scaled by `√2`.
    Rotated,
}

impl FromStr for LabelingScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural" => Ok(LabelingScheme::Natural),
            "rotated" => Ok(LabelingScheme::Rotated),
            other => Err(Error::Parse(format!("unknown labeling scheme {other:?}"))),
        }
    }
}

/// Replaces the labels of a lattice patch with the chosen scheme.
///
/// The natural scheme applies to any lattice. The rotated scheme needs a
/// 2-dim lattice with diagonals (strong or triangular).
pub fn attach_labeling(g: &Graph, scheme: LabelingScheme) -> Result<Graph> {
    let spec = g.lattice().ok_or_else(|| {
        Error::LabelingMismatch(format!("{} was not built as a lattice", g.name()))
    })?;
    let coords: Vec<i64> = match scheme {
        LabelingScheme::Natural => g.vertices().flat_map(|v| spec.coords_of(v)).collect(),
        LabelingScheme::Rotated => {
            if !matches!(spec.kind(), LatticeKind::Strong | LatticeKind::Triangular) {
                return Err(Error::LabelingMismatch(format!(
                    "rotated labeling needs a strong or triangular lattice, got {spec}"
                )));
            }
            g.vertices()
                .flat_map(|v| {
                    let c = spec.coords_of(v);
                    [c[0] + c[1], c[1] - c[0]]
                })
                .collect()
        }
    };
    let dim = match scheme {
        LabelingScheme::Natural => spec.dims().len(),
        LabelingScheme::Rotated => 2,
    };
    g.clone()
        .with_labels(Some(Labeling::from_flat(dim, coords)))
}

/// A generator invocation such as `torus:7x7` or `benes:3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Primitive(Primitive, usize),
    Lattice(LatticeSpec),
    Butterfly(u32),
    Benes(u32),
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::Primitive(kind, n) => primitive(*kind, *n),
            GraphSpec::Lattice(spec) => lattice(spec),
            GraphSpec::Butterfly(r) => butterfly(*r),
            GraphSpec::Benes(r) => benes(*r),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected KIND:ARGS, got {s:?}")))?;
        let number = |a: &str| {
            a.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad count {a:?} in {s:?}")))
        };
        let dims = |a: &str| a.split('x').map(number).collect::<Result<Vec<_>>>();
        let dimension = |a: &str| number(a).map(|r| r as u32);
        Ok(match kind.trim() {
            "path" => GraphSpec::Primitive(Primitive::Path, number(arg)?),
            "cycle" => GraphSpec::Primitive(Primitive::Cycle, number(arg)?),
            "complete" => GraphSpec::Primitive(Primitive::Complete, number(arg)?),
            "cartesian" | "grid" => {
                GraphSpec::Lattice(LatticeSpec::new(LatticeKind::Cartesian, dims(arg)?)?)
            }
            "strong" | "diagonal" => {
                GraphSpec::Lattice(LatticeSpec::new(LatticeKind::Strong, dims(arg)?)?)
            }
            "triangular" | "boron" => {
                GraphSpec::Lattice(LatticeSpec::new(LatticeKind::Triangular, dims(arg)?)?)
            }
            "torus" => GraphSpec::Lattice(LatticeSpec::new(LatticeKind::Torus, dims(arg)?)?),
            "butterfly" => GraphSpec::Butterfly(dimension(arg)?),
            "benes" => GraphSpec::Benes(dimension(arg)?),
            other => return Err(Error::Parse(format!("unknown graph family {other:?}"))),
        })
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Primitive(kind, n) => {
                let k = match kind {
                    Primitive::Path => "path",
                    Primitive::Cycle => "cycle",
                    Primitive::Complete => "complete",
                };
                write!(f, "{k}:{n}")
            }
            GraphSpec::Lattice(spec) => write!(f, "{spec}"),
            GraphSpec::Butterfly(r) => write!(f, "butterfly:{r}"),
            GraphSpec::Benes(r) => write!(f, "benes:{r}"),
        }
    }
}
