//! Near-bipartite structure: certificates, reference orientations for
//! bipartite graphs, and opposite-parity circuit pairs.
//!
//! A 1-extendible non-bipartite graph is near bipartite when deleting some
//! two edges leaves it 1-extendible and bipartite. In the reference
//! orientation of a bipartite graph with 1-factor `f` (factor edges from `m`
//! to `n`, all others back), the directed circuits are exactly the
//! `f`-alternating circuits, which drives the structure theory.


use alloc::vec::Vec;

use crate::graph::{bipartition, is_bipartite, Bipartition, Edge, Graph};
use crate::matching::{
    central_circuits, enumerate_one_factors, is_one_extendible, AlternatingCircuit,
    EdgeCycle, EnumBudget, OneFactor,
};
use crate::orient::{clockwise_parity, Orientation, Parity};
use crate::pfaffian::is_pfaffian_orientation_with;
use crate::{Error, Result};

/// Witness that a graph is near bipartite: an edge pair whose removal leaves
/// a 1-extendible bipartite graph, with the bipartition and a 1-factor of the
/// remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearBipartiteCertificate {
    pub e1: Edge,
    pub e2: Edge,
    pub bipartition: Bipartition,
    pub factor: OneFactor,
}

impl NearBipartiteCertificate {
    /// Checks all certificate invariants against the host graph.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.e1 == self.e2 {
            return Err(Error::HostMismatch("certificate edges must differ"));
        }
        if !is_one_extendible(g) || is_bipartite(g) {
            return Err(Error::HostMismatch("host must be 1-extendible and non-bipartite"));
        }
        let h = g.without_edges([&self.e1, &self.e2])?;
        if !is_one_extendible(&h) {
            return Err(Error::HostMismatch("remainder is not 1-extendible"));
        }
        self.bipartition.validate(&h)?;
        self.factor.validate(&h)?;
        Ok(())
    }
}

/// All unordered edge pairs whose deletion certifies `g` near bipartite, in
/// canonical pair order. Empty when `g` is bipartite or not 1-extendible.
pub fn find_near_bipartite_pairs(g: &Graph) -> Result<Vec<NearBipartiteCertificate>> {
    if is_bipartite(g) || !is_one_extendible(g) {
        return Ok(Vec::new());
    }
    let edges = g.edge_vec();
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (e1, e2) = (edges[i], edges[j]);
            let h = g.without_edges([&e1, &e2])?;
            let Some(b) = bipartition(&h) else { continue };
            if !is_one_extendible(&h) {
                continue;
            }
            let Some(f) = enumerate_one_factors(&h).into_iter().next() else { continue };
            let cert = NearBipartiteCertificate { e1, e2, bipartition: b, factor: f };
            debug_assert!(cert.validate(g).is_ok());
            out.push(cert);
        }
    }
    Ok(out)
}

/// The reference orientation of a bipartite graph with respect to
/// `(m, n, f)`: factor edges from `m` to `n`, all other edges from `n` to
/// `m`. Every vertex ends up with indegree 1 or outdegree 1, and the directed
/// circuits are exactly the `f`-alternating circuits.
pub fn reference_orientation(h: &Graph, b: &Bipartition, f: &OneFactor) -> Result<Orientation> {
    b.validate(h)?;
    f.validate(h)?;
    let mut pairs = Vec::with_capacity(h.edge_count());
    for e in h.edges() {
        let (m_end, n_end) = if b.side(e.lo())? {
            (e.lo(), e.hi())
        } else {
            (e.hi(), e.lo())
        };
        if f.contains(e) {
            pairs.push((m_end, n_end));
        } else {
            pairs.push((n_end, m_end));
        }
    }
    let o = Orientation::from_pairs(h, pairs)?;
    debug_assert!(h.vertices().all(|v| o.indegree(v) == 1 || o.outdegree(v) == 1));
    Ok(o)
}

/// Extends an orientation of `g - {e1, e2}` to all of `g`, directing the two
/// missing edges from their smaller to their larger endpoint. The choice of
/// direction is immaterial to everything downstream; fixing it keeps results
/// reproducible.
pub fn extend_orientation(g: &Graph, oh: &Orientation, e1: Edge, e2: Edge) -> Result<Orientation> {
    let mut pairs = oh.pairs();
    for e in [e1, e2] {
        if !g.contains_edge(e) {
            return Err(Error::UnknownEdge(e));
        }
        pairs.push(e.ends());
    }
    Orientation::from_pairs(g, pairs)
}

/// Searches for two alternating circuits of opposite clockwise parity through
/// the certificate's edge pair.
///
/// `o` must restrict to a Pfaffian orientation of `g - {e1, e2}`. Every
/// central circuit through one certificate edge passes through the other;
/// the first clockwise-even and first clockwise-odd such circuits are
/// returned, or `None` when all have equal parity (which happens exactly when
/// `g` is Pfaffian).
pub fn find_opposite_parity_pair(
    g: &Graph,
    cert: &NearBipartiteCertificate,
    o: &Orientation,
    budget: &EnumBudget,
) -> Result<Option<(AlternatingCircuit, AlternatingCircuit)>> {
    cert.validate(g)?;
    if !o.fits(g) {
        return Err(Error::HostMismatch("orientation does not fit the host"));
    }
    let h = g.without_edges([&cert.e1, &cert.e2])?;
    let oh = o.restricted_to(&h)?;
    if !is_pfaffian_orientation_with(&h, &oh, budget)? {
        return Err(Error::PreconditionViolated(
            "orientation does not restrict to a Pfaffian orientation of the remainder",
        ));
    }

    let mut even: Option<EdgeCycle> = None;
    let mut odd: Option<EdgeCycle> = None;
    for c in central_circuits(g, budget)? {
        let has1 = c.contains(cert.e1);
        let has2 = c.contains(cert.e2);
        if has1 != has2 {
            return Err(Error::Internal(
                "central circuit contains exactly one certificate edge",
            ));
        }
        if !has1 {
            continue;
        }
        match clockwise_parity(&c, o)? {
            Parity::Even => even.get_or_insert(c),
            Parity::Odd => odd.get_or_insert(c),
        };
    }
    match (even, odd) {
        (Some(a), Some(b)) => {
            let fa = crate::matching::certifying_factor(g, &a)?;
            let fb = crate::matching::certifying_factor(g, &b)?;
            Ok(Some((
                AlternatingCircuit::new(g, a, fa)?,
                AlternatingCircuit::new(g, b, fb)?,
            )))
        }
        _ => Ok(None),
    }
}

/// Whether deleting a single edge can leave a non-bipartite graph bipartite;
/// for near-bipartite certificates this must fail for both certificate edges.
pub fn single_deletion_bipartite(g: &Graph, e: Edge) -> Result<bool> {
    Ok(is_bipartite(&g.without_edges([&e])?))
}

/// Convenience: whether `g` is near bipartite, i.e. it admits at least one
/// certificate.
pub fn is_near_bipartite(g: &Graph) -> Result<bool> {
    Ok(!find_near_bipartite_pairs(g)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_reference_orientation() {
        let g = Graph::from_edges([(0, 1)]);
        let b = bipartition(&g).unwrap();
        let f = enumerate_one_factors(&g)[0].clone();
        let o = reference_orientation(&g, &b, &f).unwrap();
        assert_eq!(o.directed(Edge::new(0, 1)).unwrap(), (0, 1));
    }

    #[test]
    fn c4_reference_orientation_is_directed_circuit() {
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 3), (3, 0)]);
        let b = bipartition(&g).unwrap();
        let f = enumerate_one_factors(&g)[0].clone();
        let o = reference_orientation(&g, &b, &f).unwrap();
        for v in g.vertices() {
            assert_eq!(o.indegree(v), 1);
            assert_eq!(o.outdegree(v), 1);
        }
    }

    #[test]
    fn bipartite_graph_has_no_certificates() {
        let k33 = Graph::from_edges([
            (0, 1),
            (0, 3),
            (0, 5),
            (2, 1),
            (2, 3),
            (2, 5),
            (4, 1),
            (4, 3),
            (4, 5),
        ]);
        assert!(find_near_bipartite_pairs(&k33).unwrap().is_empty());
    }
}
