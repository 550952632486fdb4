//! Perfect matchings (1-factors), alternating and central circuits, and a
//! bounded ear-decomposition search.
//!
//! Enumeration is the contract here: factor enumeration branches on the
//! lowest-id uncovered vertex, which makes the output order lexicographic and
//! every downstream table byte-stable. Circuit enumeration is capped by an
//! explicit budget and reports exhaustion as an error rather than truncating
//! silently.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::graph::{Edge, Graph, VertexId};
use crate::{Error, Result};

/// Budget for circuit enumeration.
#[derive(Debug, Clone, Copy)]
pub struct EnumBudget {
    /// Graphs with more vertices than this are refused.
    pub max_vertices: usize,
    /// Enumeration aborts with an error after this many circuits.
    pub max_circuits: usize,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget { max_vertices: 16, max_circuits: 2_000_000 }
    }
}

/// An edge subset covering every vertex of its host graph exactly once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OneFactor {
    edges: Vec<Edge>,
}

impl OneFactor {
    /// Builds a factor from an edge list (sorted and deduplicated).
    pub fn new<I: IntoIterator<Item = Edge>>(edges: I) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        OneFactor { edges }
    }

    /// Builds a factor from vertex pairs.
    pub fn from_pairs<I: IntoIterator<Item = (VertexId, VertexId)>>(pairs: I) -> Self {
        Self::new(pairs.into_iter().map(|(u, v)| Edge::new(u, v)))
    }

    /// The edges in increasing order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Whether `e` belongs to the factor.
    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// The edge covering `v`, if any.
    pub fn edge_at(&self, v: VertexId) -> Option<Edge> {
        self.edges.iter().copied().find(|e| e.touches(v))
    }

    /// Checks that this is a 1-factor of `g`: every edge present and every
    /// vertex covered exactly once.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut covered: BTreeSet<VertexId> = BTreeSet::new();
        for &e in &self.edges {
            if !g.contains_edge(e) {
                return Err(Error::UnknownEdge(e));
            }
            if !covered.insert(e.lo()) || !covered.insert(e.hi()) {
                return Err(Error::HostMismatch("vertex covered twice by factor"));
            }
        }
        if covered.len() != g.vertex_count() {
            return Err(Error::HostMismatch("factor does not cover every vertex"));
        }
        Ok(())
    }

    /// Symmetric difference with another factor, as an edge set.
    pub fn symmetric_difference(&self, other: &OneFactor) -> BTreeSet<Edge> {
        let a: BTreeSet<Edge> = self.edges.iter().copied().collect();
        let b: BTreeSet<Edge> = other.edges.iter().copied().collect();
        a.symmetric_difference(&b).copied().collect()
    }

    /// The factor `self + c` (symmetric difference with a circuit).
    pub fn plus_cycle(&self, c: &EdgeCycle) -> OneFactor {
        let mine: BTreeSet<Edge> = self.edges.iter().copied().collect();
        let cyc: BTreeSet<Edge> = c.edges().iter().copied().collect();
        OneFactor::new(mine.symmetric_difference(&cyc).copied())
    }
}

/// An edge subset forming a single circuit, with an optional traversal sense.
///
/// Equality and ordering consider the edge set only; the sense is bookkeeping
/// for parity computations.
#[derive(Debug, Clone)]
pub struct EdgeCycle {
    edges: Vec<Edge>,
    sense: Option<Vec<VertexId>>,
}

impl PartialEq for EdgeCycle {
    fn eq(&self, other: &Self) -> bool {
        self.edges == other.edges
    }
}
impl Eq for EdgeCycle {}
impl PartialOrd for EdgeCycle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for EdgeCycle {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.edges.len(), &self.edges).cmp(&(other.edges.len(), &other.edges))
    }
}

impl EdgeCycle {
    /// Builds a circuit from an edge set, checking that the edges induce a
    /// connected subgraph in which every vertex has degree exactly 2.
    pub fn from_edge_set<I: IntoIterator<Item = Edge>>(edges: I) -> Result<Self> {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        if edges.len() < 3 {
            return Err(Error::NotACircuit);
        }
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for e in &edges {
            adj.entry(e.lo()).or_default().push(e.hi());
            adj.entry(e.hi()).or_default().push(e.lo());
        }
        if adj.values().any(|n| n.len() != 2) {
            return Err(Error::NotACircuit);
        }
        // Walk from the smallest vertex; a single circuit visits everything.
        let start = *adj.keys().next().unwrap();
        let mut seq = alloc::vec![start];
        let mut prev = start;
        let mut cur = *adj[&start].iter().min().unwrap();
        while cur != start {
            seq.push(cur);
            let nbrs = &adj[&cur];
            let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
            prev = cur;
            cur = next;
        }
        if seq.len() != adj.len() {
            return Err(Error::NotACircuit);
        }
        Ok(EdgeCycle { edges: edges.into_iter().collect(), sense: None })
    }

    /// Builds a circuit from a cyclic vertex sequence, which becomes its sense.
    pub fn from_sense(seq: Vec<VertexId>) -> Result<Self> {
        if seq.len() < 3 {
            return Err(Error::NotACircuit);
        }
        let distinct: BTreeSet<VertexId> = seq.iter().copied().collect();
        if distinct.len() != seq.len() {
            return Err(Error::NotACircuit);
        }
        let mut edges: Vec<Edge> = (0..seq.len())
            .map(|i| Edge::new(seq[i], seq[(i + 1) % seq.len()]))
            .collect();
        edges.sort_unstable();
        Ok(EdgeCycle { edges, sense: Some(seq) })
    }

    /// The same circuit with the given traversal sense attached.
    pub fn with_sense(&self, seq: Vec<VertexId>) -> Result<Self> {
        let other = EdgeCycle::from_sense(seq)?;
        if other.edges != self.edges {
            return Err(Error::NotACircuit);
        }
        Ok(other)
    }

    /// Edges in increasing order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of edges (equals the number of vertices).
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Whether the circuit has even length.
    pub fn is_even(&self) -> bool {
        self.len() % 2 == 0
    }

    /// Whether `e` lies on the circuit.
    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// The circuit's vertex set.
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.edges.iter().flat_map(|e| [e.lo(), e.hi()]).collect()
    }

    /// The stored sense, or the canonical one: starting at the smallest
    /// vertex and moving first to its smaller neighbour.
    pub fn sense_or_canonical(&self) -> Vec<VertexId> {
        if let Some(s) = &self.sense {
            return s.clone();
        }
        self.canonical_sense()
    }

    /// The canonical traversal sense.
    pub fn canonical_sense(&self) -> Vec<VertexId> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for e in &self.edges {
            adj.entry(e.lo()).or_default().push(e.hi());
            adj.entry(e.hi()).or_default().push(e.lo());
        }
        let start = *adj.keys().next().unwrap();
        let mut seq = alloc::vec![start];
        let mut prev = start;
        let mut cur = *adj[&start].iter().min().unwrap();
        while cur != start {
            seq.push(cur);
            let nbrs = &adj[&cur];
            let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
            prev = cur;
            cur = next;
        }
        seq
    }
}

/// An even circuit alternating with respect to a 1-factor: adding the circuit
/// to the factor yields another 1-factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AlternatingCircuit {
    pub cycle: EdgeCycle,
    pub factor: OneFactor,
}

impl AlternatingCircuit {
    /// Builds and checks the alternation invariants against the host graph.
    pub fn new(g: &Graph, cycle: EdgeCycle, factor: OneFactor) -> Result<Self> {
        factor.validate(g)?;
        if !cycle.is_even() {
            return Err(Error::HostMismatch("alternating circuit must be even"));
        }
        if !is_alternating(&cycle, &factor) {
            return Err(Error::HostMismatch("circuit does not alternate with the factor"));
        }
        let ac = AlternatingCircuit { cycle, factor };
        ac.factor.plus_cycle(&ac.cycle).validate(g)?;
        Ok(ac)
    }
}

/// Whether every vertex of the circuit is covered by exactly one circuit edge
/// of the factor (the alternation condition).
pub fn is_alternating(cycle: &EdgeCycle, factor: &OneFactor) -> bool {
    let sense = cycle.sense_or_canonical();
    let k = sense.len();
    if k % 2 != 0 {
        return false;
    }
    for i in 0..k {
        let v = sense[i];
        let a = Edge::new(sense[(i + k - 1) % k], v);
        let b = Edge::new(v, sense[(i + 1) % k]);
        if factor.contains(a) == factor.contains(b) {
            return false;
        }
    }
    true
}

// Internal indexed view of a graph for the enumeration loops.
struct Indexed {
    verts: Vec<VertexId>,
    adj: Vec<u32>,
}

impl Indexed {
    fn new(g: &Graph) -> Result<Indexed> {
        let verts: Vec<VertexId> = g.vertices().collect();
        if verts.len() > 32 {
            return Err(Error::TooLarge("indexed graph supports at most 32 vertices"));
        }
        let index: BTreeMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = alloc::vec![0u32; verts.len()];
        for e in g.edges() {
            let (i, j) = (index[&e.lo()], index[&e.hi()]);
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(Indexed { verts, adj })
    }

    fn n(&self) -> usize {
        self.verts.len()
    }
}

/// All 1-factors of `g`, duplicate-free, ordered lexicographically by sorted
/// edge list. Odd-order or matchless graphs yield the empty list.
pub fn enumerate_one_factors(g: &Graph) -> Vec<OneFactor> {
    let ix = match Indexed::new(g) {
        Ok(ix) => ix,
        Err(_) => return enumerate_one_factors_generic(g),
    };
    let n = ix.n();
    if n % 2 != 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current: Vec<(usize, usize)> = Vec::with_capacity(n / 2);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    fn go(ix: &Indexed, covered: u32, full: u32, current: &mut Vec<(usize, usize)>, out: &mut Vec<OneFactor>) {
        if covered == full {
            out.push(OneFactor::new(
                current.iter().map(|&(i, j)| Edge::new(ix.verts[i], ix.verts[j])),
            ));
            return;
        }
        let v = (!covered).trailing_zeros() as usize;
        let mut cands = ix.adj[v] & !covered;
        while cands != 0 {
            let w = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            current.push((v, w));
            go(ix, covered | (1 << v) | (1 << w), full, current, out);
            current.pop();
        }
    }
    go(&ix, 0, full, &mut current, &mut out);
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

// Fallback for graphs too large to index; same branching rule.
fn enumerate_one_factors_generic(g: &Graph) -> Vec<OneFactor> {
    if g.vertex_count() % 2 != 0 {
        return Vec::new();
    }
    fn go(g: &Graph, uncovered: &mut BTreeSet<VertexId>, current: &mut Vec<Edge>, out: &mut Vec<OneFactor>) {
        let v = match uncovered.iter().next() {
            None => {
                out.push(OneFactor::new(current.iter().copied()));
                return;
            }
            Some(&v) => v,
        };
        let partners: Vec<VertexId> = g
            .neighbors(v)
            .unwrap()
            .filter(|w| uncovered.contains(w))
            .collect();
        for w in partners {
            uncovered.remove(&v);
            uncovered.remove(&w);
            current.push(Edge::new(v, w));
            go(g, uncovered, current, out);
            current.pop();
            uncovered.insert(v);
            uncovered.insert(w);
        }
    }
    let mut uncovered = g.vertex_set();
    let mut out = Vec::new();
    go(g, &mut uncovered, &mut Vec::new(), &mut out);
    out.sort_unstable();
    out
}

/// Whether `g` has at least one 1-factor.
pub fn has_one_factor(g: &Graph) -> bool {
    SubsetMatcher::new(g)
        .map(|mut m| m.whole_graph_matchable())
        .unwrap_or_else(|_| !enumerate_one_factors_generic(g).is_empty())
}

/// Memoised perfect-matching existence over vertex subsets of a fixed host.
///
/// Supports hosts with at most 22 vertices; the memo table has one byte per
/// vertex subset.
pub struct SubsetMatcher {
    verts: Vec<VertexId>,
    adj: Vec<u32>,
    memo: Vec<u8>, // 0 unknown, 1 no, 2 yes
}

impl SubsetMatcher {
    pub fn new(g: &Graph) -> Result<Self> {
        let verts: Vec<VertexId> = g.vertices().collect();
        if verts.len() > 22 {
            return Err(Error::TooLarge("subset matcher supports at most 22 vertices"));
        }
        let index: BTreeMap<VertexId, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = alloc::vec![0u32; verts.len()];
        for e in g.edges() {
            let (i, j) = (index[&e.lo()], index[&e.hi()]);
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        let memo = alloc::vec![0u8; 1usize << verts.len()];
        Ok(SubsetMatcher { verts, adj, memo })
    }

    /// The subset mask corresponding to a vertex set.
    pub fn mask_of(&self, vs: &BTreeSet<VertexId>) -> Result<u32> {
        let mut mask = 0u32;
        for &v in vs {
            let i = self
                .verts
                .binary_search(&v)
                .map_err(|_| Error::UnknownVertex(v))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Whether the induced subgraph on `mask` has a perfect matching.
    pub fn matchable(&mut self, mask: u32) -> bool {
        if mask == 0 {
            return true;
        }
        match self.memo[mask as usize] {
            1 => return false,
            2 => return true,
            _ => {}
        }
        let v = mask.trailing_zeros() as usize;
        let mut cands = self.adj[v] & mask & !(1u32 << v);
        let mut ok = false;
        while cands != 0 {
            let w = cands.trailing_zeros();
            cands &= cands - 1;
            if self.matchable(mask & !(1 << v) & !(1 << w)) {
                ok = true;
                break;
            }
        }
        self.memo[mask as usize] = if ok { 2 } else { 1 };
        ok
    }

    /// Whether the whole host graph has a perfect matching.
    pub fn whole_graph_matchable(&mut self) -> bool {
        let n = self.verts.len();
        if n % 2 != 0 {
            return false;
        }
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        self.matchable(full)
    }

    /// Whether the complement of `vs` in the host is matchable.
    pub fn complement_matchable(&mut self, vs: &BTreeSet<VertexId>) -> Result<bool> {
        let n = self.verts.len();
        let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let mask = self.mask_of(vs)?;
        Ok(self.matchable(full & !mask))
    }
}

/// The first edge (in canonical order) lying in no 1-factor, or `None` when
/// every edge is covered (the graph is 1-extendible).
pub fn uncovered_edge(g: &Graph) -> Option<Edge> {
    if let Ok(mut m) = SubsetMatcher::new(g) {
        let n = g.vertex_count();
        let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        for e in g.edges() {
            let mask = m
                .mask_of(&BTreeSet::from([e.lo(), e.hi()]))
                .expect("edge endpoints are vertices");
            if !m.matchable(full & !mask) {
                return Some(e);
            }
        }
        None
    } else {
        let factors = enumerate_one_factors(g);
        let covered: BTreeSet<Edge> = factors.iter().flat_map(|f| f.edges().iter().copied()).collect();
        g.edges().find(|e| !covered.contains(e))
    }
}

/// Whether every edge of `g` lies in at least one 1-factor.
pub fn is_one_extendible(g: &Graph) -> bool {
    uncovered_edge(g).is_none()
}

/// Enumerates all circuits of `g` as edge cycles with canonical senses,
/// ordered by length then edge list.
pub fn enumerate_circuits(g: &Graph, budget: &EnumBudget) -> Result<Vec<EdgeCycle>> {
    if g.vertex_count() > budget.max_vertices {
        return Err(Error::BudgetExceeded("circuit enumeration vertex cap"));
    }
    let ix = Indexed::new(g)?;
    let n = ix.n();
    let mut out: Vec<EdgeCycle> = Vec::new();
    let mut path: Vec<usize> = Vec::with_capacity(n);
    // Canonical enumeration: each circuit is emitted exactly once, rooted at
    // its smallest vertex, with the second vertex smaller than the last.
    fn dfs(
        ix: &Indexed,
        root: usize,
        path: &mut Vec<usize>,
        visited: u32,
        out: &mut Vec<EdgeCycle>,
        cap: usize,
    ) -> Result<()> {
        let cur = *path.last().unwrap();
        let mut cands = ix.adj[cur] & !visited;
        while cands != 0 {
            let w = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if w <= root {
                continue;
            }
            path.push(w);
            if path.len() >= 3 && ix.adj[w] & (1 << root) != 0 && path[1] < *path.last().unwrap() {
                if out.len() >= cap {
                    return Err(Error::BudgetExceeded("circuit enumeration count cap"));
                }
                out.push(
                    EdgeCycle::from_sense(path.iter().map(|&i| ix.verts[i]).collect())
                        .expect("enumerated path is a circuit"),
                );
            }
            dfs(ix, root, path, visited | (1 << w), out, cap)?;
            path.pop();
        }
        Ok(())
    }
    for root in 0..n {
        path.clear();
        path.push(root);
        dfs(&ix, root, &mut path, 1 << root, &mut out, budget.max_circuits)?;
    }
    out.sort_unstable();
    Ok(out)
}

/// Splits an edge set into vertex-disjoint circuits.
///
/// Fails unless every vertex touched by the set has degree exactly 2 in it.
pub fn circuit_components(edges: &BTreeSet<Edge>) -> Result<Vec<EdgeCycle>> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for e in edges {
        adj.entry(e.lo()).or_default().push(e.hi());
        adj.entry(e.hi()).or_default().push(e.lo());
    }
    if adj.values().any(|n| n.len() != 2) {
        return Err(Error::NotACircuit);
    }
    let mut remaining: BTreeSet<Edge> = edges.clone();
    let mut out = Vec::new();
    while let Some(&first) = remaining.iter().next() {
        let start = first.lo();
        let mut seq = alloc::vec![start];
        let mut prev = start;
        let mut cur = first.hi();
        remaining.remove(&first);
        while cur != start {
            seq.push(cur);
            let nbrs = &adj[&cur];
            let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
            remaining.remove(&Edge::new(cur, next));
            prev = cur;
            cur = next;
        }
        out.push(EdgeCycle::from_sense(seq)?);
    }
    out.sort_unstable();
    Ok(out)
}

/// All circuits alternating with respect to `f`, computed two independent
/// ways that must agree:
///
/// * decomposing `f + f'` into circuits over every other factor `f'`, and
/// * directly filtering the even circuits of `g` for alternation.
///
/// Disagreement is an internal error.
pub fn alternating_circuits(g: &Graph, f: &OneFactor, budget: &EnumBudget) -> Result<Vec<AlternatingCircuit>> {
    f.validate(g).map_err(|_| Error::HostMismatch("not a 1-factor of the host"))?;

    let factors = enumerate_one_factors(g);
    let mut via_pairs: BTreeSet<EdgeCycle> = BTreeSet::new();
    for f2 in &factors {
        if f2 == f {
            continue;
        }
        let diff = f.symmetric_difference(f2);
        for c in circuit_components(&diff)? {
            via_pairs.insert(c);
        }
    }

    let mut direct: BTreeSet<EdgeCycle> = BTreeSet::new();
    for c in enumerate_circuits(g, budget)? {
        if c.is_even() && is_alternating(&c, f) {
            direct.insert(c);
        }
    }

    if via_pairs != direct {
        return Err(Error::Internal("alternating circuit routes disagree"));
    }
    direct
        .into_iter()
        .map(|c| AlternatingCircuit::new(g, c, f.clone()))
        .collect()
}

/// All central circuits of `g`: even circuits whose vertex complement has a
/// perfect matching (equivalently, circuits alternating with respect to some
/// 1-factor). Deduplicated as edge sets, canonical order.
pub fn central_circuits(g: &Graph, budget: &EnumBudget) -> Result<Vec<EdgeCycle>> {
    let mut matcher = SubsetMatcher::new(g)?;
    let mut out = Vec::new();
    for c in enumerate_circuits(g, budget)? {
        if !c.is_even() {
            continue;
        }
        if matcher.complement_matchable(&c.vertices())? {
            out.push(c);
        }
    }
    Ok(out)
}

/// For a central circuit, a 1-factor it alternates with: one alternating half
/// of the circuit (the one containing the circuit's smallest edge) completed
/// by a perfect matching of the complement.
pub fn certifying_factor(g: &Graph, c: &EdgeCycle) -> Result<OneFactor> {
    if !c.is_even() {
        return Err(Error::OddCircuit);
    }
    let sense = c.sense_or_canonical();
    let k = sense.len();
    let half: Vec<Edge> = (0..k)
        .step_by(2)
        .map(|i| Edge::new(sense[i], sense[(i + 1) % k]))
        .collect();
    let rest = g.without_vertices(&c.vertices())?;
    let complement = enumerate_one_factors(&rest).into_iter().next().ok_or(Error::NoFactors)?;
    let f = OneFactor::new(half.into_iter().chain(complement.edges().iter().copied()));
    f.validate(g)?;
    Ok(f)
}

/// One step budget for the ear-decomposition search.
pub const DEFAULT_EAR_BUDGET: u64 = 1_000_000;

// Validity check shared by the ear-decomposition DFS.
type SubgraphCheck<'a> = dyn FnMut(u64, &[Edge], &Graph, &OneFactor) -> bool + 'a;

/// Searches for an ear decomposition of a 1-extendible graph.
///
/// The result is a sequence of 1-extendible subgraphs starting at a single
/// edge of `f` and ending at `g`, each step adjoining the one or two odd arcs
/// of an `f`-alternating circuit that lie outside the previous subgraph.
/// Returns `None` when no decomposition was found within the node budget.
pub fn ear_decomposition(g: &Graph, f: &OneFactor, max_nodes: u64) -> Result<Option<Vec<Graph>>> {
    ear_decomposition_restricted(g, f, max_nodes, 2)
}

/// Like [`ear_decomposition`] but allowing at most `max_arcs` new arcs per
/// step (`max_arcs = 1` searches for single-ear decompositions).
pub fn ear_decomposition_restricted(
    g: &Graph,
    f: &OneFactor,
    max_nodes: u64,
    max_arcs: usize,
) -> Result<Option<Vec<Graph>>> {
    if let Some(e) = uncovered_edge(g) {
        return Err(Error::NotOneExtendible(e));
    }
    f.validate(g)?;

    let edges = g.edge_vec();
    if edges.len() > 63 {
        return Err(Error::TooLarge("ear decomposition supports at most 63 edges"));
    }
    let eix: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let full: u64 = (1u64 << edges.len()) - 1;

    let circuits = alternating_circuits(g, f, &EnumBudget::default())?;
    // Per circuit: its edge mask and its edges in traversal order.
    let circ: Vec<(u64, Vec<usize>)> = circuits
        .iter()
        .map(|ac| {
            let sense = ac.cycle.sense_or_canonical();
            let k = sense.len();
            let ordered: Vec<usize> =
                (0..k).map(|i| eix[&Edge::new(sense[i], sense[(i + 1) % k])]).collect();
            let mask = ordered.iter().fold(0u64, |m, &i| m | (1u64 << i));
            (mask, ordered)
        })
        .collect();

    let mut nodes = 0u64;
    let mut dead: BTreeSet<u64> = BTreeSet::new();
    let mut valid_cache: BTreeMap<u64, bool> = BTreeMap::new();

    // f ∩ E(H) must be a 1-factor of H and H must be 1-extendible.
    let mut subgraph_valid = |mask: u64, edges: &[Edge], g: &Graph, f: &OneFactor| -> bool {
        if let Some(&v) = valid_cache.get(&mask) {
            return v;
        }
        let sub_edges: Vec<Edge> = edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1u64 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        let h = g.edge_subgraph(sub_edges.iter()).expect("subgraph edges are host edges");
        let f_in = OneFactor::new(sub_edges.iter().copied().filter(|&e| f.contains(e)));
        let ok = f_in.validate(&h).is_ok() && is_one_extendible(&h);
        valid_cache.insert(mask, ok);
        ok
    };

    fn arcs_outside(ordered: &[usize], mask: u64) -> Option<Vec<usize>> {
        // Lengths of the maximal runs of circuit edges outside `mask`.
        let k = ordered.len();
        let outside: Vec<bool> = ordered.iter().map(|&i| mask & (1u64 << i) == 0).collect();
        if outside.iter().all(|&b| b) || outside.iter().all(|&b| !b) {
            return None;
        }
        // Start at a position inside the subgraph so runs are not split.
        let start = outside.iter().position(|&b| !b).unwrap();
        let mut lens = Vec::new();
        let mut run = 0usize;
        for t in 0..k {
            if outside[(start + t) % k] {
                run += 1;
            } else if run > 0 {
                lens.push(run);
                run = 0;
            }
        }
        if run > 0 {
            lens.push(run);
        }
        Some(lens)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        mask: u64,
        full: u64,
        circ: &[(u64, Vec<usize>)],
        edges: &[Edge],
        g: &Graph,
        f: &OneFactor,
        max_arcs: usize,
        max_nodes: u64,
        nodes: &mut u64,
        dead: &mut BTreeSet<u64>,
        valid: &mut SubgraphCheck<'_>,
        chain: &mut Vec<u64>,
    ) -> Result<bool> {
        if mask == full {
            return Ok(true);
        }
        if dead.contains(&mask) {
            return Ok(false);
        }
        *nodes += 1;
        if *nodes > max_nodes {
            return Err(Error::BudgetExceeded("ear decomposition node budget"));
        }
        for (cmask, ordered) in circ {
            if cmask & !mask == 0 || cmask & mask == 0 {
                continue;
            }
            let Some(lens) = arcs_outside(ordered, mask) else { continue };
            if lens.len() > max_arcs || lens.iter().any(|l| l % 2 == 0) {
                continue;
            }
            let next = mask | cmask;
            if chain.contains(&next) {
                continue;
            }
            if !valid(next, edges, g, f) {
                continue;
            }
            chain.push(next);
            if dfs(next, full, circ, edges, g, f, max_arcs, max_nodes, nodes, dead, valid, chain)? {
                return Ok(true);
            }
            chain.pop();
        }
        dead.insert(mask);
        Ok(false)
    }

    for (i, &e) in edges.iter().enumerate() {
        if !f.contains(e) {
            continue;
        }
        let start = 1u64 << i;
        let mut chain = alloc::vec![start];
        let found = dfs(
            start,
            full,
            &circ,
            &edges,
            g,
            f,
            max_arcs,
            max_nodes,
            &mut nodes,
            &mut dead,
            &mut subgraph_valid,
            &mut chain,
        )?;
        if found {
            let seq: Vec<Graph> = chain
                .iter()
                .map(|&m| {
                    let es: Vec<Edge> = edges
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| m & (1u64 << j) != 0)
                        .map(|(_, &e)| e)
                        .collect();
                    g.edge_subgraph(es.iter()).expect("chain edges are host edges")
                })
                .collect();
            return Ok(Some(seq));
        }
    }
    Ok(None)
}
