//! Backtracking graph isomorphism for desk-scale graphs.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::graph::{Graph, VertexId};

/// Finds a vertex bijection from `a` onto `b` preserving adjacency exactly.
///
/// Vertices of `a` are processed in a fixed order (rarest degree first, ties
/// by id) and candidates in `b` are tried in increasing id order, so the
/// first mapping found is deterministic.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<BTreeMap<VertexId, VertexId>> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let mut deg_a: Vec<usize> = a.vertices().map(|v| a.degree(v).unwrap()).collect();
    let mut deg_b: Vec<usize> = b.vertices().map(|v| b.degree(v).unwrap()).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return None;
    }

    let verts_a: Vec<VertexId> = {
        // Rarer degrees first cuts the branching early.
        let mut count: BTreeMap<usize, usize> = BTreeMap::new();
        for v in a.vertices() {
            *count.entry(a.degree(v).unwrap()).or_default() += 1;
        }
        let mut vs: Vec<VertexId> = a.vertices().collect();
        vs.sort_by_key(|&v| (count[&a.degree(v).unwrap()], v));
        vs
    };
    let verts_b: Vec<VertexId> = b.vertices().collect();

    let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut used: BTreeMap<VertexId, bool> = verts_b.iter().map(|&v| (v, false)).collect();
    if assign(a, b, &verts_a, &verts_b, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn assign(
    a: &Graph,
    b: &Graph,
    verts_a: &[VertexId],
    verts_b: &[VertexId],
    idx: usize,
    map: &mut BTreeMap<VertexId, VertexId>,
    used: &mut BTreeMap<VertexId, bool>,
) -> bool {
    if idx == verts_a.len() {
        return true;
    }
    let va = verts_a[idx];
    let da = a.degree(va).unwrap();
    for &vb in verts_b {
        if used[&vb] || b.degree(vb).unwrap() != da {
            continue;
        }
        // Adjacency to every already-mapped vertex must match exactly.
        let consistent = map
            .iter()
            .all(|(&ua, &ub)| a.has_edge(va, ua) == b.has_edge(vb, ub));
        if !consistent {
            continue;
        }
        map.insert(va, vb);
        used.insert(vb, true);
        if assign(a, b, verts_a, verts_b, idx + 1, map, used) {
            return true;
        }
        map.remove(&va);
        used.insert(vb, false);
    }
    false
}
