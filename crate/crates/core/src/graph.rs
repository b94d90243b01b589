//! Undirected simple graphs, all-pairs hop distances, isometric embeddings
//! and the clique number.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::LatticeSpec;
use crate::labeling::Labeling;
use crate::Vertex;

/// Whether [`Graph::build`] should reject disconnected input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    #[default]
    Required,
    Allowed,
}

/// Immutable undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
    labels: Option<Labeling>,
    lattice: Option<LatticeSpec>,
}

impl Graph {
    /// Builds a connected graph, rejecting out-of-range ids, self-loops and
    /// duplicate edges (in either orientation).
    pub fn from_edges(
        n: usize,
        edges: &[(Vertex, Vertex)],
        name: impl Into<String>,
    ) -> Result<Self> {
        Self::build(n, edges, name, Connectivity::Required)
    }

    pub fn build(
        n: usize,
        edges: &[(Vertex, Vertex)],
        name: impl Into<String>,
        connectivity: Connectivity,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        let graph = Graph {
            name: name.into(),
            adj,
            edge_count: edges.len(),
            labels: None,
            lattice: None,
        };
        if connectivity == Connectivity::Required {
            let components = graph.component_count();
            if components > 1 {
                return Err(Error::Disconnected { components });
            }
        }
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&Labeling> {
        self.labels.as_ref()
    }

    pub fn lattice(&self) -> Option<&LatticeSpec> {
        self.lattice.as_ref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Attaches (or with `None`, strips) a coordinate labeling.
    pub fn with_labels(mut self, labels: Option<Labeling>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != self.n() {
                return Err(Error::LabelingMismatch(format!(
                    "{} labels for {} vertices",
                    l.len(),
                    self.n()
                )));
            }
            l.check_injective()?;
        }
        self.labels = labels;
        Ok(self)
    }

    pub(crate) fn with_lattice(mut self, spec: Option<LatticeSpec>) -> Self {
        self.lattice = spec;
        self
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Subgraph induced by `keep`; vertex `keep[i]` becomes `i`. Labels are
    /// carried over, lattice provenance is dropped.
    pub fn induced_subgraph(&self, keep: &[Vertex], connectivity: Connectivity) -> Result<Graph> {
        let mut position = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            if v >= self.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n(),
                });
            }
            if position[v] != usize::MAX {
                return Err(Error::NotDistinct(vec![v]));
            }
            position[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| position[u] != usize::MAX && position[v] != usize::MAX)
            .map(|(u, v)| (position[u], position[v]))
            .collect();
        let sub = Graph::build(
            keep.len(),
            &edges,
            format!("{}[induced]", self.name),
            connectivity,
        )?;
        let labels = self.labels.as_ref().map(|l| {
            let dim = l.dim();
            let coords = keep
                .iter()
                .flat_map(|&v| l.point(v).iter().copied())
                .collect();
            Labeling::from_flat(dim, coords)
        });
        sub.with_labels(labels)
    }
}

/// Sentinel for unreachable pairs (only possible with [`Connectivity::Allowed`]).
pub const UNREACHABLE: u16 = u16::MAX;

/// All-pairs hop distances, stored row-major as 16-bit integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u16>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.d[u * self.n + v] as u32
    }

    pub fn row(&self, u: Vertex) -> &[u16] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.d
            .iter()
            .filter(|&&x| x != UNREACHABLE)
            .map(|&x| x as u32)
            .max()
            .unwrap_or(0)
    }

    /// `b` lies strictly between `a` and `c`.
    #[inline]
    pub fn is_between(&self, a: Vertex, b: Vertex, c: Vertex) -> bool {
        b != a && b != c && self.get(a, c) == self.get(a, b) + self.get(b, c)
    }

    /// Wraps an externally computed matrix; used by oracles in tests.
    pub fn from_rows(rows: Vec<Vec<u16>>) -> Self {
        let n = rows.len();
        let d = rows.into_iter().flatten().collect::<Vec<_>>();
        assert_eq!(d.len(), n * n, "distance rows must form a square matrix");
        DistanceMatrix { n, d }
    }
}

fn bfs_row(g: &Graph, source: Vertex, row: &mut [u16]) {
    row.fill(UNREACHABLE);
    row[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let next = row[u] + 1;
        for &w in g.neighbors(u) {
            if row[w] == UNREACHABLE {
                row[w] = next;
                queue.push_back(w);
            }
        }
    }
}

/// Breadth-first search from every vertex.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut d = vec![0u16; n * n];
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        d.par_chunks_mut(n.max(1))
            .enumerate()
            .for_each(|(s, row)| bfs_row(g, s, row));
    }
    #[cfg(not(feature = "parallel"))]
    for (s, row) in d.chunks_mut(n.max(1)).enumerate() {
        bfs_row(g, s, row);
    }
    DistanceMatrix { n, d }
}

/// Outcome of an isometry check; `witness` holds the first pair `(x, y)` of
/// sub vertices whose distance is not preserved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub ok: bool,
    pub witness: Option<(Vertex, Vertex)>,
}

/// Checks that `map` (sub vertex -> host vertex) is an injective graph
/// homomorphism preserving all distances.
pub fn is_isometric_embedding(
    host: &Graph,
    host_d: &DistanceMatrix,
    sub: &Graph,
    sub_d: &DistanceMatrix,
    map: &[Vertex],
) -> Result<EmbeddingReport> {
    if map.len() != sub.n() {
        return Err(Error::InvalidParameter(format!(
            "map has {} entries for {} sub vertices",
            map.len(),
            sub.n()
        )));
    }
    let mut preimage = vec![usize::MAX; host.n()];
    for (x, &hx) in map.iter().enumerate() {
        if hx >= host.n() {
            return Err(Error::VertexOutOfRange {
                vertex: hx,
                n: host.n(),
            });
        }
        if preimage[hx] != usize::MAX {
            return Err(Error::NotInjective(preimage[hx], x));
        }
        preimage[hx] = x;
    }
    if let Some((x, y)) = sub.edges().find(|&(x, y)| !host.has_edge(map[x], map[y])) {
        return Err(Error::NotEdgePreserving(x, y));
    }
    for x in sub.vertices() {
        for y in x + 1..sub.n() {
            if sub_d.get(x, y) != host_d.get(map[x], map[y]) {
                return Ok(EmbeddingReport {
                    ok: false,
                    witness: Some((x, y)),
                });
            }
        }
    }
    Ok(EmbeddingReport {
        ok: true,
        witness: None,
    })
}

pub const CLIQUE_VERTEX_LIMIT: usize = 1000;

/// Exact clique number by branch and bound with a greedy-colouring bound.
pub fn clique_number(g: &Graph) -> Result<usize> {
    if g.n() > CLIQUE_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "clique number",
            size: g.n(),
            limit: CLIQUE_VERTEX_LIMIT,
        });
    }
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut best = 0;
    expand_clique(g, 0, order, &mut best);
    Ok(best)
}

fn expand_clique(g: &Graph, size: usize, candidates: Vec<Vertex>, best: &mut usize) {
    if candidates.is_empty() {
        *best = (*best).max(size);
        return;
    }
    let (order, colors) = greedy_colouring(g, &candidates);
    for i in (0..order.len()).rev() {
        if size + colors[i] <= *best {
            return;
        }
        let v = order[i];
        let next: Vec<Vertex> = order[..i]
            .iter()
            .copied()
            .filter(|&u| g.has_edge(u, v))
            .collect();
        expand_clique(g, size + 1, next, best);
    }
}

/// Sequential colouring; returns the vertices sorted by colour together with
/// the running colour count, which bounds the clique size of each prefix.
fn greedy_colouring(g: &Graph, candidates: &[Vertex]) -> (Vec<Vertex>, Vec<usize>) {
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for &v in candidates {
        match classes
            .iter_mut()
            .find(|class| class.iter().all(|&u| !g.has_edge(u, v)))
        {
            Some(class) => class.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut order = Vec::with_capacity(candidates.len());
    let mut colors = Vec::with_capacity(candidates.len());
    for (c, class) in classes.into_iter().enumerate() {
        for v in class {
            order.push(v);
            colors.push(c + 1);
        }
    }
    (order, colors)
}
