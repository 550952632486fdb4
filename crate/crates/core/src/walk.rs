//! Decompositions of directed walks and path pairs into paths and circuits.
//!
//! Both operations return pieces satisfying two identities over undirected
//! edge sets: the mod-2 sum of the pieces equals the mod-2 sum of the input,
//! and their union equals the input's edge set. The identities are checked on
//! every call; a violation is an internal error.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::graph::{Edge, Graph, VertexId};
use crate::orient::Orientation;
use crate::{Error, Result};

/// A directed step: `(origin, terminus)`.
pub type Step = (VertexId, VertexId);

/// A directed step sequence in which each step's origin is the previous
/// step's terminus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedWalk {
    steps: Vec<Step>,
}

impl DirectedWalk {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptyInput);
        }
        for w in steps.windows(2) {
            if w[0].1 != w[1].0 {
                return Err(Error::WalkHypothesis("steps are not consecutively incident"));
            }
        }
        if steps.iter().any(|&(u, v)| u == v) {
            return Err(Error::WalkHypothesis("loop step"));
        }
        Ok(DirectedWalk { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn origin(&self) -> VertexId {
        self.steps[0].0
    }

    pub fn terminus(&self) -> VertexId {
        self.steps[self.steps.len() - 1].1
    }
}

fn undirected_set(steps: &[Step]) -> BTreeSet<Edge> {
    steps.iter().map(|&(u, v)| Edge::new(u, v)).collect()
}

fn undirected_sum(steps: &[Step]) -> BTreeSet<Edge> {
    let mut sum = BTreeSet::new();
    for &(u, v) in steps {
        let e = Edge::new(u, v);
        if !sum.insert(e) {
            sum.remove(&e);
        }
    }
    sum
}

fn xor_into(acc: &mut BTreeSet<Edge>, part: &[Step]) {
    for &(u, v) in part {
        let e = Edge::new(u, v);
        if !acc.insert(e) {
            acc.remove(&e);
        }
    }
}

fn is_simple_directed_path(steps: &[Step]) -> bool {
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    if steps.is_empty() {
        return true;
    }
    seen.insert(steps[0].0);
    for &(_, v) in steps {
        if !seen.insert(v) {
            return false;
        }
    }
    true
}

fn is_simple_directed_circuit(steps: &[Step]) -> bool {
    if steps.len() < 2 {
        return false;
    }
    if steps[steps.len() - 1].1 != steps[0].0 {
        return false;
    }
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    steps.iter().all(|&(u, _)| seen.insert(u))
}

/// Splits a walk in a host where every vertex has indegree 1 or outdegree 1
/// into a directed path and directed circuits.
///
/// The walk's origin must have outdegree 1 and its terminus indegree 1 in the
/// host. The pieces satisfy `sum(walk) = path + Σ circuits` and
/// `path ∪ circuits = {steps}`.
pub fn decompose_walk(
    w: &DirectedWalk,
    host: &Graph,
    o: &Orientation,
) -> Result<(Vec<Step>, Vec<Vec<Step>>)> {
    if !o.fits(host) {
        return Err(Error::HostMismatch("orientation does not fit the host"));
    }
    for &(u, v) in w.steps() {
        if o.directed(Edge::new(u, v))? != (u, v) {
            return Err(Error::WalkHypothesis("step disagrees with the host orientation"));
        }
    }
    for v in host.vertices() {
        if o.indegree(v) >= 2 && o.outdegree(v) >= 2 {
            return Err(Error::WalkHypothesis("a vertex has indegree >= 2 and outdegree >= 2"));
        }
    }
    if o.outdegree(w.origin()) != 1 {
        return Err(Error::WalkHypothesis("walk origin must have outdegree 1"));
    }
    if o.indegree(w.terminus()) != 1 {
        return Err(Error::WalkHypothesis("walk terminus must have indegree 1"));
    }

    // Repeatedly excise the circuit between the first two occurrences of the
    // earliest repeated edge.
    let mut seq: Vec<Step> = w.steps().to_vec();
    let mut circuits: Vec<Vec<Step>> = Vec::new();
    loop {
        let mut first_pos: alloc::collections::BTreeMap<Step, usize> =
            alloc::collections::BTreeMap::new();
        let mut rep: Option<(usize, usize)> = None;
        for (j, &s) in seq.iter().enumerate() {
            if let Some(&i) = first_pos.get(&s) {
                rep = Some((i, j));
                break;
            }
            first_pos.insert(s, j);
        }
        match rep {
            None => break,
            Some((i, j)) => {
                let circuit: Vec<Step> = seq[i..j].to_vec();
                if !is_simple_directed_circuit(&circuit) {
                    return Err(Error::Internal("excised segment is not a directed circuit"));
                }
                circuits.push(circuit);
                seq.drain(i..j);
            }
        }
    }
    if !is_simple_directed_path(&seq) {
        return Err(Error::Internal("residue of walk decomposition is not a simple path"));
    }

    // Both displayed identities, over undirected edge sets.
    let mut sum = undirected_sum(w.steps());
    xor_into(&mut sum, &seq);
    for c in &circuits {
        xor_into(&mut sum, c);
    }
    if !sum.is_empty() {
        return Err(Error::Internal("walk decomposition sum identity failed"));
    }
    let mut union = undirected_set(&seq);
    for c in &circuits {
        union.extend(undirected_set(c));
    }
    if union != undirected_set(w.steps()) {
        return Err(Error::Internal("walk decomposition union identity failed"));
    }
    Ok((seq, circuits))
}

/// Decomposes a directed path `p` from `x` to `y` and a directed path `q`
/// from `y` back to `x` into directed circuits whose mod-2 sum is `p + q` and
/// whose union is `p ∪ q`.
///
/// If `p` and `q` traverse some common edge in opposite directions the
/// decomposition does not exist; the fully reversed case (`p + q` empty)
/// returns no circuits, anything partial is an error.
pub fn decompose_two_paths(p: &[Step], q: &[Step]) -> Result<Vec<Vec<Step>>> {
    if p.is_empty() || q.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !is_simple_directed_path(p) || !is_simple_directed_path(q) {
        return Err(Error::WalkHypothesis("inputs must be simple directed paths"));
    }
    let (x, y) = (p[0].0, p[p.len() - 1].1);
    if q[0].0 != y || q[q.len() - 1].1 != x {
        return Err(Error::EndpointMismatch);
    }
    let p_dirset: BTreeSet<Step> = p.iter().copied().collect();
    let antiparallel = q.iter().filter(|&&(u, v)| p_dirset.contains(&(v, u))).count();
    if antiparallel > 0 {
        if undirected_sum(p) == undirected_sum(q) && p.len() == q.len() {
            // q is exactly p reversed: the sum is empty and so is the
            // decomposition.
            return Ok(Vec::new());
        }
        return Err(Error::AntiparallelOverlap);
    }

    let circuits = two_paths_rec(p, q, 0)?;

    let mut sum = undirected_sum(p);
    let qsum = undirected_sum(q);
    sum = sum.symmetric_difference(&qsum).copied().collect();
    let mut acc: BTreeSet<Edge> = BTreeSet::new();
    let mut union: BTreeSet<Edge> = BTreeSet::new();
    for c in &circuits {
        if !is_simple_directed_circuit(c) {
            return Err(Error::Internal("piece is not a directed circuit"));
        }
        for &(u, v) in c {
            let e = Edge::new(u, v);
            union.insert(e);
            if !acc.insert(e) {
                acc.remove(&e);
            }
        }
    }
    if acc != sum {
        return Err(Error::Internal("two-path decomposition sum identity failed"));
    }
    let mut expected_union = undirected_set(p);
    expected_union.extend(undirected_set(q));
    if union != expected_union {
        return Err(Error::Internal("two-path decomposition union identity failed"));
    }
    Ok(circuits)
}

fn path_vertices(p: &[Step]) -> Vec<VertexId> {
    let mut vs = alloc::vec![p[0].0];
    vs.extend(p.iter().map(|&(_, v)| v));
    vs
}

fn subpath(p: &[Step], from: VertexId, to: VertexId) -> Vec<Step> {
    let vs = path_vertices(p);
    let i = vs.iter().position(|&v| v == from).expect("subpath origin on path");
    let j = vs.iter().position(|&v| v == to).expect("subpath terminus on path");
    debug_assert!(i <= j, "subpath endpoints out of order");
    p[i..j].to_vec()
}

fn two_paths_rec(p: &[Step], q: &[Step], depth: usize) -> Result<Vec<Vec<Step>>> {
    if depth > p.len() + q.len() + 2 {
        return Err(Error::Internal("two-path recursion did not terminate"));
    }
    let (x, y) = (p[0].0, p[p.len() - 1].1);
    let pv = path_vertices(p);
    let qv = path_vertices(q);
    let pv_set: BTreeSet<VertexId> = pv.iter().copied().collect();
    let shared: Vec<VertexId> = qv.iter().copied().filter(|v| pv_set.contains(v)).collect();
    if shared.iter().copied().collect::<BTreeSet<_>>().len() == 2 {
        // Internally disjoint: p followed by q is a single circuit.
        let mut c = p.to_vec();
        c.extend_from_slice(q);
        return Ok(alloc::vec![c]);
    }

    // b: the last vertex of q other than its terminus x that also lies on p.
    let b = *qv[..qv.len() - 1]
        .iter()
        .rfind(|&&v| pv_set.contains(&v) && v != x)
        .ok_or(Error::Internal("no crossing vertex found"))?;
    // a: the last vertex of q incident with an edge of q[y..b] outside p,
    // which is the terminus of the last such edge. Everything of q strictly
    // between a and b runs along p, so a lies on p.
    let q_prefix = subpath(q, y, b);
    let p_directed: BTreeSet<Step> = p.iter().copied().collect();
    let a = q_prefix
        .iter()
        .rfind(|s| !p_directed.contains(s))
        .map(|&(_, v)| v)
        .ok_or(Error::Internal("q-prefix is contained in p"))?;
    if !pv_set.contains(&a) {
        return Err(Error::Internal("crossing vertex not on p"));
    }

    let p_tail = subpath(p, a, y);
    let q_head = subpath(q, y, a);
    let mut circuits = two_paths_rec(&p_tail, &q_head, depth + 1)?;
    let mut closing = subpath(p, x, b);
    closing.extend(subpath(q, b, x));
    circuits.push(closing);
    Ok(circuits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_internally_disjoint_paths_form_one_circuit() {
        let p = [(0, 1), (1, 2)];
        let q = [(2, 3), (3, 0)];
        let cs = decompose_two_paths(&p, &q).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].len(), 4);
    }

    #[test]
    fn shared_internal_vertex_gives_two_circuits() {
        // p: 0 -> 1 -> 2 -> 3, q: 3 -> 1 -> 0 via distinct edges where the
        // paths share internal vertex 1.
        let p = [(0, 1), (1, 2), (2, 3)];
        let q = [(3, 4), (4, 1), (1, 5), (5, 0)];
        let cs = decompose_two_paths(&p, &q).unwrap();
        assert_eq!(cs.len(), 2);
    }

    #[test]
    fn shared_directed_edge_is_covered_twice() {
        let p = [(0, 1), (1, 2), (2, 3)];
        let q = [(3, 1), (1, 2), (2, 0)];
        let cs = decompose_two_paths(&p, &q).unwrap();
        // Edge (1,2) is in both paths, so it must appear in an even number of
        // circuits to vanish from the sum while staying in the union.
        let count = cs
            .iter()
            .filter(|c| c.iter().any(|&(u, v)| (u, v) == (1, 2)))
            .count();
        assert_eq!(count % 2, 0);
        assert!(count >= 2);
    }

    #[test]
    fn full_reverse_gives_empty_decomposition() {
        let p = [(0, 1), (1, 2)];
        let q = [(2, 1), (1, 0)];
        assert_eq!(decompose_two_paths(&p, &q).unwrap(), Vec::<Vec<(u32, u32)>>::new());
    }

    #[test]
    fn partial_reverse_is_an_error() {
        let p = [(0, 1), (1, 2)];
        let q = [(2, 1), (1, 3), (3, 0)];
        assert_eq!(decompose_two_paths(&p, &q), Err(Error::AntiparallelOverlap));
    }

    #[test]
    fn walk_already_a_path_decomposes_trivially() {
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 3)]);
        let o = Orientation::from_pairs(&g, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let w = DirectedWalk::new(alloc::vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let (path, circuits) = decompose_walk(&w, &g, &o).unwrap();
        assert_eq!(path, w.steps());
        assert!(circuits.is_empty());
    }
}
