//! Simple undirected graphs and the structural operations everything else
//! builds on: contraction, edge subdivision, degree-2 suppression,
//! bipartition, and isomorphism testing.
//!
//! Graphs are vertex-labelled by small integer ids, loop-free and without
//! multiple edges. Subgraphs with no isolated vertices are identified with
//! their edge sets. All values are immutable after construction and every
//! operation is a pure function.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Vertex identifier. Small dense integers; string labels for fixtures and
/// IO are an alias map maintained by callers.
pub type VertexId = u32;

/// An undirected edge, stored with its endpoints in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    /// Creates an edge between two distinct vertices.
    ///
    /// Panics if `u == v`; loops are excluded by construction.
    pub fn new(u: VertexId, v: VertexId) -> Self {
        assert!(u != v, "loop edge ({u},{u}) is not allowed");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    /// The smaller endpoint.
    pub fn lo(&self) -> VertexId {
        self.0
    }

    /// The larger endpoint.
    pub fn hi(&self) -> VertexId {
        self.1
    }

    /// Both endpoints as a `(lo, hi)` pair.
    pub fn ends(&self) -> (VertexId, VertexId) {
        (self.0, self.1)
    }

    /// Whether `v` is one of the endpoints.
    pub fn touches(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`. Panics if `v` is not an endpoint.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            debug_assert_eq!(self.1, v);
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// A bipartition of a graph's vertex set: every edge joins `m` to `n`.
///
/// For a connected graph the partition is unique up to swapping sides; the
/// side containing the smallest vertex id of each component is placed in `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub m: BTreeSet<VertexId>,
    pub n: BTreeSet<VertexId>,
}

impl Bipartition {
    /// The side `v` belongs to: `true` for `m`. Errors if `v` is in neither.
    pub fn side(&self, v: VertexId) -> Result<bool> {
        if self.m.contains(&v) {
            Ok(true)
        } else if self.n.contains(&v) {
            Ok(false)
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Checks that this is a valid bipartition of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.m.intersection(&self.n).next().is_some() {
            return Err(Error::HostMismatch("bipartition sides overlap"));
        }
        let mut union = self.m.clone();
        union.extend(self.n.iter().copied());
        if union != g.vertex_set() {
            return Err(Error::HostMismatch("bipartition does not cover the vertex set"));
        }
        for e in g.edges() {
            if self.m.contains(&e.lo()) == self.m.contains(&e.hi()) {
                return Err(Error::HostMismatch("edge inside one bipartition side"));
            }
        }
        Ok(())
    }
}

/// A simple undirected graph with integer vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    // Adjacency is the single source of truth; isolated vertices have an
    // empty neighbour set.
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl Default for Graph {
    fn default() -> Self {
        Self::new()
    }
}

impl Graph {
    /// The empty graph.
    pub fn new() -> Self {
        Graph { adj: BTreeMap::new() }
    }

    /// Builds a graph from an edge list, declaring endpoints as vertices.
    pub fn from_edges<I: IntoIterator<Item = (VertexId, VertexId)>>(edges: I) -> Self {
        let mut g = Graph::new();
        for (u, v) in edges {
            g.add_vertex(u);
            g.add_vertex(v);
            g.insert_edge(Edge::new(u, v));
        }
        g
    }

    /// Declares a vertex (no effect if already present).
    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    /// Adds an edge between two declared vertices.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::HostMismatch("loop edges are not allowed"));
        }
        if !self.adj.contains_key(&u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.adj.contains_key(&v) {
            return Err(Error::UnknownVertex(v));
        }
        self.insert_edge(Edge::new(u, v));
        Ok(())
    }

    fn insert_edge(&mut self, e: Edge) {
        self.adj.get_mut(&e.lo()).unwrap().insert(e.hi());
        self.adj.get_mut(&e.hi()).unwrap().insert(e.lo());
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Whether the graph has no vertices.
    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Vertices in increasing id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    /// The vertex set.
    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    /// Whether `v` is a declared vertex.
    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    /// Edges in increasing `(lo, hi)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, nbrs)| nbrs.iter().copied().filter(move |&w| u < w).map(move |w| Edge(u, w)))
    }

    /// Edges collected into a sorted vector.
    pub fn edge_vec(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    /// Whether the edge `{u,v}` is present.
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    /// Whether `e` is an edge of this graph.
    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.lo(), e.hi())
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: VertexId) -> Result<impl Iterator<Item = VertexId> + '_> {
        self.adj
            .get(&v)
            .map(|s| s.iter().copied())
            .ok_or(Error::UnknownVertex(v))
    }

    /// Degree of `v`.
    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.adj.get(&v).map(|s| s.len()).ok_or(Error::UnknownVertex(v))
    }

    /// Whether the graph is connected (the empty graph counts as connected).
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = alloc::vec![v];
            while let Some(u) = stack.pop() {
                if !comp.insert(u) {
                    continue;
                }
                for w in self.adj[&u].iter().copied() {
                    if !comp.contains(&w) {
                        stack.push(w);
                    }
                }
            }
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// The subgraph induced by a vertex set.
    pub fn induced(&self, vs: &BTreeSet<VertexId>) -> Result<Graph> {
        let mut g = Graph::new();
        for &v in vs {
            if !self.has_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
            g.add_vertex(v);
        }
        for e in self.edges() {
            if vs.contains(&e.lo()) && vs.contains(&e.hi()) {
                g.insert_edge(e);
            }
        }
        Ok(g)
    }

    /// The subgraph determined by an edge set: its vertices are exactly the
    /// endpoints of the given edges.
    pub fn edge_subgraph<'a, I: IntoIterator<Item = &'a Edge>>(&self, edges: I) -> Result<Graph> {
        let mut g = Graph::new();
        for &e in edges {
            if !self.contains_edge(e) {
                return Err(Error::UnknownEdge(e));
            }
            g.add_vertex(e.lo());
            g.add_vertex(e.hi());
            g.insert_edge(e);
        }
        Ok(g)
    }

    /// A copy with the listed edges removed (vertices stay).
    pub fn without_edges<'a, I: IntoIterator<Item = &'a Edge>>(&self, edges: I) -> Result<Graph> {
        let mut g = self.clone();
        for &e in edges {
            if !g.contains_edge(e) {
                return Err(Error::UnknownEdge(e));
            }
            g.adj.get_mut(&e.lo()).unwrap().remove(&e.hi());
            g.adj.get_mut(&e.hi()).unwrap().remove(&e.lo());
        }
        Ok(g)
    }

    /// A copy with the listed vertices (and their edges) removed.
    pub fn without_vertices(&self, vs: &BTreeSet<VertexId>) -> Result<Graph> {
        for v in vs {
            if !self.has_vertex(*v) {
                return Err(Error::UnknownVertex(*v));
            }
        }
        let keep: BTreeSet<VertexId> = self.vertices().filter(|v| !vs.contains(v)).collect();
        self.induced(&keep)
    }

    /// Largest vertex id, if any.
    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.adj.keys().next_back().copied()
    }
}

/// Two-colours `g` if it has no odd circuit.
///
/// Returns `None` exactly when some component contains an odd circuit. Each
/// component's side containing its smallest vertex id goes into `m`.
pub fn bipartition(g: &Graph) -> Option<Bipartition> {
    if g.is_empty() {
        return None;
    }
    let mut color: BTreeMap<VertexId, bool> = BTreeMap::new();
    for comp in g.components() {
        let start = *comp.iter().next().unwrap();
        color.insert(start, true);
        let mut queue = alloc::vec![start];
        while let Some(u) = queue.pop() {
            let cu = color[&u];
            let nbrs: Vec<VertexId> = g.neighbors(u).unwrap().collect();
            for w in nbrs {
                match color.get(&w) {
                    None => {
                        color.insert(w, !cu);
                        queue.push(w);
                    }
                    Some(&cw) => {
                        if cw == cu {
                            return None;
                        }
                    }
                }
            }
        }
    }
    let mut m = BTreeSet::new();
    let mut n = BTreeSet::new();
    for (v, side) in color {
        if side {
            m.insert(v);
        } else {
            n.insert(v);
        }
    }
    Some(Bipartition { m, n })
}

/// Whether `g` has no odd circuit. The empty graph counts as bipartite.
pub fn is_bipartite(g: &Graph) -> bool {
    g.is_empty() || bipartition(g).is_some()
}

/// Contracts the vertex set `s` to a single vertex.
///
/// The new vertex takes the smallest id in `s`. Edges inside `s` vanish,
/// edges leaving `s` are redirected to the new vertex, and parallel edges
/// merge (simple-graph semantics). The result has `|V| - |s| + 1` vertices.
pub fn contract(g: &Graph, s: &BTreeSet<VertexId>) -> Result<Graph> {
    if s.is_empty() {
        return Err(Error::EmptyInput);
    }
    for &v in s {
        if !g.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    let merged = *s.iter().next().unwrap();
    let mut out = Graph::new();
    for v in g.vertices() {
        if !s.contains(&v) {
            out.add_vertex(v);
        }
    }
    out.add_vertex(merged);
    for e in g.edges() {
        let a = if s.contains(&e.lo()) { merged } else { e.lo() };
        let b = if s.contains(&e.hi()) { merged } else { e.hi() };
        if a != b {
            out.insert_edge(Edge::new(a, b));
        }
    }
    Ok(out)
}

/// Like [`contract`], also reporting how many parallel edges were merged and
/// how many internal edges vanished.
pub fn contract_counting_merges(g: &Graph, s: &BTreeSet<VertexId>) -> Result<(Graph, usize)> {
    let out = contract(g, s)?;
    let internal = g
        .edges()
        .filter(|e| s.contains(&e.lo()) && s.contains(&e.hi()))
        .count();
    let merged = g.edge_count() - internal - out.edge_count();
    Ok((out, merged))
}

/// Replaces edge `e` by a path of `k` edges through `k - 1` fresh vertices.
///
/// Fresh vertices take consecutive ids above the current maximum. With
/// `k = 1` the graph is returned unchanged. The step is an even edge
/// subdivision exactly when `k` is odd.
pub fn subdivide_edge(g: &Graph, e: Edge, k: usize) -> Result<Graph> {
    if !g.contains_edge(e) {
        return Err(Error::UnknownEdge(e));
    }
    if k == 0 {
        return Err(Error::EmptyInput);
    }
    if k == 1 {
        return Ok(g.clone());
    }
    let mut out = g.without_edges([&e])?;
    let base = g.max_vertex_id().unwrap() + 1;
    let mut prev = e.lo();
    for i in 0..(k - 1) as u32 {
        let fresh = base + i;
        out.add_vertex(fresh);
        out.insert_edge(Edge::new(prev, fresh));
        prev = fresh;
    }
    out.insert_edge(Edge::new(prev, e.hi()));
    Ok(out)
}

/// The record of one suppressed chain: the original path, listed from the
/// chain's smaller endpoint.
pub type ChainMap = BTreeMap<Edge, Vec<VertexId>>;

/// Replaces every maximal path whose internal vertices all have degree 2 by a
/// single edge, recording the original path it stands for.
///
/// Refuses bare circuits (no base graph exists) and inputs whose suppression
/// would create a loop or a multiple edge (such inputs are not subdivisions
/// of a simple graph). Chain paths of length 1 are the untouched edges.
pub fn suppress_degree2(g: &Graph) -> Result<(Graph, ChainMap)> {
    if g.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let base_vertices: BTreeSet<VertexId> =
        g.vertices().filter(|&v| g.degree(v).unwrap() != 2).collect();
    if base_vertices.is_empty() {
        // Every vertex has degree 2 and the graph is connected: a circuit.
        return Err(Error::BareCircuit);
    }

    let mut out = Graph::new();
    for &v in &base_vertices {
        out.add_vertex(v);
    }
    let mut chains: ChainMap = BTreeMap::new();
    for &start in &base_vertices {
        let nbrs: Vec<VertexId> = g.neighbors(start).unwrap().collect();
        for first in nbrs {
            // Walk through degree-2 vertices until the next base vertex.
            let mut path = alloc::vec![start, first];
            let (mut prev, mut cur) = (start, first);
            while !base_vertices.contains(&cur) {
                let next = g
                    .neighbors(cur)
                    .unwrap()
                    .find(|&w| w != prev)
                    .ok_or(Error::Internal("degree-2 vertex without second neighbour"))?;
                prev = cur;
                cur = next;
                path.push(cur);
            }
            if cur == start {
                // A chain from a base vertex back to itself is a loop.
                return Err(Error::NotASubdivision);
            }
            if start > cur {
                // Each chain is discovered from both ends; keep the copy
                // starting at the smaller endpoint.
                continue;
            }
            let e = Edge::new(start, cur);
            debug_assert_eq!(path[0], e.lo());
            match chains.get(&e) {
                None => {
                    out.insert_edge(e);
                    chains.insert(e, path);
                }
                Some(existing) => {
                    if *existing != path {
                        // Two distinct chains with the same endpoints.
                        return Err(Error::NotASubdivision);
                    }
                }
            }
        }
    }
    Ok((out, chains))
}

/// Searches for an isomorphism from `a` onto `b`.
///
/// Backtracking vertex-mapping search with degree pruning; candidates are
/// tried smallest-id-first, so the returned mapping is reproducible.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<BTreeMap<VertexId, VertexId>> {
    crate::iso::find_isomorphism(a, b)
}

/// Whether `a` and `b` are isomorphic.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}
