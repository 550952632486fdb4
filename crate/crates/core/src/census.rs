//! Exhaustive census of small graphs up to isomorphism, built by vertex
//! augmentation with canonical-form deduplication.
//!
//! Graphs live in adjacency-row bitmasks; the canonical key of a graph is the
//! lexicographically largest upper-triangle bitstring over all vertex
//! relabellings, found by a branch-and-bound placement search. The census
//! used by the decider cross-checks is the set of connected graphs with a
//! perfect matching on at most eight vertices.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::Graph;

const MAXN: usize = 8;

/// A graph on at most eight vertices as adjacency-row bitmasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmallGraph {
    pub n: usize,
    pub adj: [u8; MAXN],
}

impl SmallGraph {
    fn empty(n: usize) -> Self {
        SmallGraph { n, adj: [0; MAXN] }
    }

    fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i] & (1 << j) != 0
    }

    fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen: u8 = 1;
        loop {
            let mut grown = seen;
            for i in 0..self.n {
                if seen & (1 << i) != 0 {
                    grown |= self.adj[i];
                }
            }
            if grown == seen {
                break;
            }
            seen = grown;
        }
        seen.count_ones() as usize == self.n
    }

    pub fn has_perfect_matching(&self) -> bool {
        if self.n % 2 != 0 {
            return false;
        }
        fn rec(g: &SmallGraph, covered: u8) -> bool {
            let full = ((1u16 << g.n) - 1) as u8;
            if covered == full {
                return true;
            }
            let v = (!covered).trailing_zeros() as usize;
            let mut cands = g.adj[v] & !covered;
            while cands != 0 {
                let w = cands.trailing_zeros() as usize;
                cands &= cands - 1;
                if rec(g, covered | (1 << v) | (1 << w)) {
                    return true;
                }
            }
            false
        }
        rec(self, 0)
    }

    /// Converts to a [`Graph`] on vertex ids `0..n`.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new();
        for v in 0..self.n as u32 {
            g.add_vertex(v);
        }
        for j in 1..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    g.add_edge(i as u32, j as u32).expect("vertices declared");
                }
            }
        }
        g
    }
}

// Upper-triangle bit offset of (i, j), i < j, in augmentation order.
fn offset(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

const KEYBITS: usize = MAXN * (MAXN - 1) / 2;

fn key_bit(o: usize) -> u32 {
    1u32 << (KEYBITS - 1 - o)
}

/// The canonical key: the maximal upper-triangle bitstring over all vertex
/// relabellings. Equal keys mean isomorphic graphs.
pub fn canonical_key(g: &SmallGraph) -> u32 {
    let mut best: Option<u32> = None;
    let mut perm = [0usize; MAXN];
    let mut used = [false; MAXN];

    fn place(
        g: &SmallGraph,
        k: usize,
        value: u32,
        placed_mask: u32,
        perm: &mut [usize; MAXN],
        used: &mut [bool; MAXN],
        best: &mut Option<u32>,
    ) {
        let n = g.n;
        if k == n {
            if best.map(|b| value > b).unwrap_or(true) {
                *best = Some(value);
            }
            return;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            let mut value2 = value;
            let mut placed2 = placed_mask;
            for (i, &p) in perm[..k].iter().enumerate() {
                let b = key_bit(offset(i, k));
                placed2 |= b;
                if g.has_edge(p, cand) {
                    value2 |= b;
                }
            }
            // Prefix pruning: bit significance follows placement order, so a
            // smaller prefix can never recover.
            if let Some(b) = *best {
                if value2 < b & placed2 {
                    continue;
                }
            }
            perm[k] = cand;
            used[cand] = true;
            place(g, k + 1, value2, placed2, perm, used, best);
            used[cand] = false;
        }
    }

    place(g, 0, 0, 0, &mut perm, &mut used, &mut best);
    best.unwrap_or(0)
}

/// All graphs on exactly `n` vertices up to isomorphism, keyed canonically.
/// Levels are built by augmenting every graph on `n - 1` vertices with a new
/// vertex and every possible neighbourhood.
pub fn graphs_up_to_iso(n: usize) -> Vec<SmallGraph> {
    assert!((1..=MAXN).contains(&n), "census sized for at most {MAXN} vertices");
    let mut level: BTreeMap<u32, SmallGraph> = BTreeMap::new();
    level.insert(0, SmallGraph::empty(1));
    for size in 2..=n {
        let mut next: BTreeMap<u32, SmallGraph> = BTreeMap::new();
        for parent in level.values() {
            for nb in 0u16..(1u16 << (size - 1)) {
                let mut g = SmallGraph::empty(size);
                g.adj[..size - 1].copy_from_slice(&parent.adj[..size - 1]);
                for i in 0..size - 1 {
                    if nb & (1 << i) != 0 {
                        g.add_edge(i, size - 1);
                    }
                }
                let key = canonical_key(&g);
                next.entry(key).or_insert(g);
            }
        }
        level = next;
    }
    level.into_values().collect()
}

/// Every connected graph with a perfect matching on at most `max_n` vertices,
/// one representative per isomorphism class, in a stable order.
pub fn connected_factor_census(max_n: usize) -> Vec<Graph> {
    assert!(max_n <= MAXN);
    let mut out = Vec::new();
    let mut n = 2;
    while n <= max_n {
        for g in graphs_up_to_iso(n) {
            if g.is_connected() && g.has_perfect_matching() {
                out.push(g.to_graph());
            }
        }
        n += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts_match_known_values() {
        // Numbers of graphs on n unlabelled vertices.
        let expected = [1usize, 2, 4, 11, 34, 156, 1044];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(graphs_up_to_iso(i + 1).len(), want, "n = {}", i + 1);
        }
    }

    #[test]
    fn connected_counts_match_known_values() {
        let expected = [1usize, 1, 2, 6, 21, 112, 853];
        for (i, &want) in expected.iter().enumerate() {
            let got = graphs_up_to_iso(i + 1)
                .into_iter()
                .filter(|g| g.is_connected())
                .count();
            assert_eq!(got, want, "n = {}", i + 1);
        }
    }

    #[test]
    fn small_census_contents() {
        // Connected graphs with a perfect matching: 1 on two vertices, 5 on
        // four (of the 6 connected graphs only the star fails).
        let census = connected_factor_census(4);
        assert_eq!(census.iter().filter(|g| g.vertex_count() == 2).count(), 1);
        assert_eq!(census.iter().filter(|g| g.vertex_count() == 4).count(), 5);
    }

    #[test]
    fn canonical_key_is_iso_invariant() {
        let mut a = SmallGraph::empty(5);
        a.add_edge(0, 1);
        a.add_edge(1, 2);
        a.add_edge(2, 3);
        a.add_edge(3, 4);
        let mut b = SmallGraph::empty(5);
        b.add_edge(3, 2);
        b.add_edge(2, 4);
        b.add_edge(4, 0);
        b.add_edge(0, 1);
        assert_eq!(canonical_key(&a), canonical_key(&b));
        let mut c = a;
        c.add_edge(0, 4);
        assert_ne!(canonical_key(&a), canonical_key(&c));
    }
}
