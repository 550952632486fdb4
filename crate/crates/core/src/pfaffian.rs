//! Pfaffian deciders: sign-table constancy, the Kasteleyn clockwise-parity
//! criterion, a GF(2) orientation solver, a gauge-fixed brute-force oracle,
//! intractable-set search, and degree-2 contraction.
//!
//! Two independent routes back every decision. `is_pfaffian_orientation`
//! computes both the sign table and the clockwise parities of all central
//! circuits and treats disagreement as an internal error;
//! `find_pfaffian_orientation` (GF(2) elimination over central-circuit parity
//! constraints) is checked in tests against `brute_force_pfaffian_orientation`
//! (exhaustive search over orientations with a spanning forest fixed).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::gf2;
use crate::graph::{contract, Edge, Graph, VertexId};
use crate::matching::{
    central_circuits, certifying_factor, enumerate_one_factors, AlternatingCircuit, EdgeCycle,
    EnumBudget,
};
use crate::orient::{clockwise_parity, sign_table, Orientation, Parity};
use crate::{Error, Result};

/// Whether `o` is a Pfaffian orientation of `g`: all 1-factors have the same
/// sign.
///
/// Also evaluates the Kasteleyn criterion (every central circuit clockwise
/// odd) and fails with an internal error if the two answers differ.
pub fn is_pfaffian_orientation(g: &Graph, o: &Orientation) -> Result<bool> {
    is_pfaffian_orientation_with(g, o, &EnumBudget::default())
}

/// [`is_pfaffian_orientation`] with an explicit circuit-enumeration budget.
pub fn is_pfaffian_orientation_with(g: &Graph, o: &Orientation, budget: &EnumBudget) -> Result<bool> {
    let table = sign_table(g, o)?;
    let by_signs = table.is_constant();

    let mut by_parity = true;
    for c in central_circuits(g, budget)? {
        if clockwise_parity(&c, o)? == Parity::Even {
            by_parity = false;
            break;
        }
    }

    if by_signs != by_parity {
        return Err(Error::Internal("sign table and Kasteleyn criterion disagree"));
    }
    Ok(by_signs)
}

/// Searches for a Pfaffian orientation of `g` by GF(2) elimination.
///
/// Starting from the reference orientation (every edge from its smaller to
/// its larger endpoint), each central circuit contributes one parity
/// constraint on the set of flipped edges; any solution of the resulting
/// linear system is a Pfaffian orientation. Free variables are fixed to zero,
/// so the result is deterministic. Graphs without a 1-factor are vacuously
/// Pfaffian and get the reference orientation.
pub fn find_pfaffian_orientation(g: &Graph) -> Result<Option<Orientation>> {
    find_pfaffian_orientation_with(g, &EnumBudget::default())
}

/// [`find_pfaffian_orientation`] with an explicit circuit-enumeration budget.
pub fn find_pfaffian_orientation_with(g: &Graph, budget: &EnumBudget) -> Result<Option<Orientation>> {
    let edges = g.edge_vec();
    if edges.len() > 63 {
        return Err(Error::TooLarge("orientation solver supports at most 63 edges"));
    }
    let reference = Orientation::low_to_high(g);
    if enumerate_one_factors(g).is_empty() {
        return Ok(Some(reference));
    }
    let eix: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    let mut rows: Vec<(u64, bool)> = Vec::new();
    for c in central_circuits(g, budget)? {
        let mask = c.edges().iter().fold(0u64, |m, e| m | (1u64 << eix[e]));
        // The flips on the circuit must change its agreement count to odd.
        let rhs = clockwise_parity(&c, &reference)? == Parity::Even;
        rows.push((mask, rhs));
    }

    let Some(x) = gf2::solve(edges.len(), &rows) else {
        return Ok(None);
    };
    let mut o = reference;
    for (i, &e) in edges.iter().enumerate() {
        if x & (1u64 << i) != 0 {
            o = o.with_edge_flipped(e)?;
        }
    }
    if !is_pfaffian_orientation_with(g, &o, budget)? {
        return Err(Error::Internal("GF(2) solution failed validation"));
    }
    Ok(Some(o))
}

/// Whether `g` is Pfaffian.
pub fn is_pfaffian(g: &Graph) -> Result<bool> {
    Ok(find_pfaffian_orientation(g)?.is_some())
}

/// [`is_pfaffian`] with an explicit circuit-enumeration budget.
pub fn is_pfaffian_with(g: &Graph, budget: &EnumBudget) -> Result<bool> {
    Ok(find_pfaffian_orientation_with(g, budget)?.is_some())
}

/// Exhaustive reference search for a Pfaffian orientation.
///
/// Flipping every edge at one vertex negates every 1-factor's sign, so
/// orientations agreeing with the reference on a spanning forest represent
/// all orientations up to sign-preserving re-gauging. The search enumerates
/// the `2^(m - n + c)` flip masks over the non-forest edges in increasing
/// order and returns the first Pfaffian orientation found.
pub fn brute_force_pfaffian_orientation(g: &Graph) -> Result<Option<Orientation>> {
    let edges = g.edge_vec();
    let verts: Vec<VertexId> = g.vertices().collect();
    let n = verts.len();
    if edges.len() > 63 || n > 32 {
        return Err(Error::TooLarge("brute force supports at most 63 edges and 32 vertices"));
    }
    let factors = enumerate_one_factors(g);
    let reference = Orientation::low_to_high(g);
    if factors.is_empty() {
        return Ok(Some(reference));
    }

    let vix: BTreeMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let eix: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    // Spanning forest by BFS from the smallest vertex of each component.
    let mut in_tree = alloc::vec![false; edges.len()];
    {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        for &root in &verts {
            if seen.contains(&root) {
                continue;
            }
            seen.insert(root);
            let mut queue = alloc::vec![root];
            let mut qi = 0;
            while qi < queue.len() {
                let u = queue[qi];
                qi += 1;
                let nbrs: Vec<VertexId> = g.neighbors(u)?.collect();
                for w in nbrs {
                    if seen.insert(w) {
                        in_tree[eix[&Edge::new(u, w)]] = true;
                        queue.push(w);
                    }
                }
            }
        }
    }
    let free: Vec<usize> = (0..edges.len()).filter(|&i| !in_tree[i]).collect();
    if free.len() > 28 {
        return Err(Error::TooLarge("brute force space above 2^28 orientations"));
    }

    // Factors as edge-index lists; signs are computed from scratch for every
    // candidate orientation.
    let factor_edges: Vec<Vec<usize>> =
        factors.iter().map(|f| f.edges().iter().map(|e| eix[e]).collect()).collect();
    let ends: Vec<(usize, usize)> =
        edges.iter().map(|e| (vix[&e.lo()], vix[&e.hi()])).collect();

    let sequence = |flip: u64, f: &[usize], out: &mut [usize]| {
        for (k, &ei) in f.iter().enumerate() {
            let (lo, hi) = ends[ei];
            let (a, b) = if flip & (1u64 << ei) == 0 { (lo, hi) } else { (hi, lo) };
            out[2 * k] = a;
            out[2 * k + 1] = b;
        }
    };

    let mut base_seq = alloc::vec![0usize; n];
    let mut seq = alloc::vec![0usize; n];
    let mut pos = alloc::vec![0usize; n];
    let mut perm = alloc::vec![0usize; n];
    let mut seen = alloc::vec![false; n];

    'mask: for mask_bits in 0u64..(1u64 << free.len()) {
        let mut flip = 0u64;
        for (b, &ei) in free.iter().enumerate() {
            if mask_bits & (1u64 << b) != 0 {
                flip |= 1u64 << ei;
            }
        }
        sequence(flip, &factor_edges[0], &mut base_seq);
        for (i, &v) in base_seq.iter().enumerate() {
            pos[v] = i;
        }
        for f in &factor_edges[1..] {
            sequence(flip, f, &mut seq);
            for (i, &v) in seq.iter().enumerate() {
                perm[i] = pos[v];
            }
            seen.iter_mut().for_each(|s| *s = false);
            let mut cycles = 0usize;
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                cycles += 1;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = perm[i];
                }
            }
            if (n - cycles) % 2 != 0 {
                continue 'mask; // a minus sign: not Pfaffian
            }
        }
        let mut o = reference;
        for (i, &e) in edges.iter().enumerate() {
            if flip & (1u64 << i) != 0 {
                o = o.with_edge_flipped(e)?;
            }
        }
        return Ok(Some(o));
    }
    Ok(None)
}

/// A set of alternating circuits with empty mod-2 sum in which an odd number
/// of members are clockwise even. Such a set exists exactly when the host is
/// non-Pfaffian.
#[derive(Debug, Clone)]
pub struct IntractableSet {
    pub circuits: Vec<AlternatingCircuit>,
    pub parities: Vec<Parity>,
}

impl IntractableSet {
    /// Checks the defining invariants under `o`.
    pub fn validate(&self, o: &Orientation) -> Result<()> {
        if self.circuits.len() != self.parities.len() {
            return Err(Error::Internal("parity list length mismatch"));
        }
        let mut sum: BTreeSet<Edge> = BTreeSet::new();
        let mut even = 0usize;
        for (ac, &p) in self.circuits.iter().zip(&self.parities) {
            for &e in ac.cycle.edges() {
                if !sum.insert(e) {
                    sum.remove(&e);
                }
            }
            if clockwise_parity(&ac.cycle, o)? != p {
                return Err(Error::Internal("stored parity is stale"));
            }
            if p == Parity::Even {
                even += 1;
            }
        }
        if !sum.is_empty() {
            return Err(Error::HostMismatch("intractable set has nonempty sum"));
        }
        if even % 2 == 0 {
            return Err(Error::HostMismatch("intractable set has even clockwise-even count"));
        }
        Ok(())
    }
}

const INTRACTABLE_DFS_CAP: u64 = 20_000_000;

/// Searches for an intractable set of at most `max_size` central circuits
/// under `o`.
///
/// Linear algebra decides existence outright: if no subset of any size works,
/// the answer is a definitive `None`. Otherwise a small witness is assembled
/// from the elimination and shrunk greedily; if it still exceeds `max_size` a
/// bounded exhaustive search settles whether one exists within the bound.
pub fn find_intractable_set(
    g: &Graph,
    o: &Orientation,
    max_size: usize,
    budget: &EnumBudget,
) -> Result<Option<IntractableSet>> {
    if enumerate_one_factors(g).is_empty() {
        return Err(Error::NoFactors);
    }
    let edges = g.edge_vec();
    if edges.len() > 62 {
        return Err(Error::TooLarge("intractable search supports at most 62 edges"));
    }
    let eix: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let circuits = central_circuits(g, budget)?;
    let parity_bit = edges.len();

    let mut vectors: Vec<u64> = Vec::with_capacity(circuits.len());
    for c in &circuits {
        let mut v = c.edges().iter().fold(0u64, |m, e| m | (1u64 << eix[e]));
        if clockwise_parity(c, o)? == Parity::Even {
            v |= 1u64 << parity_bit;
        }
        vectors.push(v);
    }

    let mut finder = gf2::SubsetFinder::new(parity_bit + 1, vectors.len());
    for (i, &v) in vectors.iter().enumerate() {
        finder.insert(i, v);
    }
    let target = 1u64 << parity_bit;
    let Some(mut combo) = finder.express(target) else {
        return Ok(None);
    };

    // Greedy shrink against the kernel.
    loop {
        let before = combo.len();
        for k in finder.kernel() {
            let mut cand = combo.clone();
            cand.xor_with(k);
            if cand.len() < combo.len() {
                combo = cand;
            }
        }
        if combo.len() >= before {
            break;
        }
    }

    let chosen: Vec<usize> = if combo.len() <= max_size {
        combo.indices()
    } else {
        match bounded_subset_search(&vectors, target, max_size)? {
            Some(ix) => ix,
            None => return Ok(None),
        }
    };

    let mut set = IntractableSet { circuits: Vec::new(), parities: Vec::new() };
    for i in chosen {
        let c: &EdgeCycle = &circuits[i];
        let f = certifying_factor(g, c)?;
        set.parities.push(clockwise_parity(c, o)?);
        set.circuits.push(AlternatingCircuit::new(g, c.clone(), f)?);
    }
    set.validate(o)?;
    Ok(Some(set))
}

// Exhaustive choose/skip search for a subset of at most `max_size` vectors
// summing to `target`, in canonical order.
fn bounded_subset_search(vectors: &[u64], target: u64, max_size: usize) -> Result<Option<Vec<usize>>> {
    fn go(
        vectors: &[u64],
        target: u64,
        i: usize,
        acc: u64,
        chosen: &mut Vec<usize>,
        max_size: usize,
        nodes: &mut u64,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > INTRACTABLE_DFS_CAP {
            return Err(Error::BudgetExceeded("intractable subset search"));
        }
        if acc == target && !chosen.is_empty() {
            return Ok(true);
        }
        if i == vectors.len() || chosen.len() == max_size {
            return Ok(false);
        }
        chosen.push(i);
        if go(vectors, target, i + 1, acc ^ vectors[i], chosen, max_size, nodes)? {
            return Ok(true);
        }
        chosen.pop();
        go(vectors, target, i + 1, acc, chosen, max_size, nodes)
    }
    let mut chosen = Vec::new();
    let mut nodes = 0u64;
    if go(vectors, target, 0, 0, &mut chosen, max_size, &mut nodes)? {
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

/// Contracts both edges incident on a degree-2 vertex, merging the vertex
/// with its two neighbours. Preserves the Pfaffian property in both
/// directions.
pub fn contract_degree2(g: &Graph, v: VertexId) -> Result<Graph> {
    let d = g.degree(v)?;
    if d != 2 {
        return Err(Error::WrongDegree { vertex: v, expected: 2, actual: d });
    }
    let mut s: BTreeSet<VertexId> = g.neighbors(v)?.collect();
    s.insert(v);
    contract(g, &s)
}

/// Index subsets of `circuits` (restricted to even circuits) with empty mod-2
/// edge-set sum, derived from elimination kernels; up to `max_sets` of them.
pub fn empty_sum_circuit_sets(circuits: &[EdgeCycle], max_sets: usize) -> Vec<Vec<usize>> {
    let mut edge_ids: BTreeMap<Edge, usize> = BTreeMap::new();
    for c in circuits {
        for &e in c.edges() {
            let next = edge_ids.len();
            edge_ids.entry(e).or_insert(next);
        }
    }
    if edge_ids.len() > 64 {
        return Vec::new();
    }
    let even: Vec<usize> = (0..circuits.len()).filter(|&i| circuits[i].is_even()).collect();
    let mut finder = gf2::SubsetFinder::new(edge_ids.len().max(1), even.len());
    for (slot, &i) in even.iter().enumerate() {
        let v = circuits[i].edges().iter().fold(0u64, |m, e| m | (1u64 << edge_ids[e]));
        finder.insert(slot, v);
    }
    finder
        .kernel()
        .iter()
        .take(max_sets)
        .map(|k| k.indices().into_iter().map(|slot| even[slot]).collect())
        .collect()
}
