//! Orientations, signs of 1-factors, and clockwise parity.
//!
//! An orientation assigns a direction to every edge of a host graph. Writing
//! a 1-factor as the vertex sequence of its directed pairs, its sign relative
//! to a base factor is the parity of the permutation carrying one sequence to
//! the other; the sign is independent of the order in which the edges are
//! written. An orientation is Pfaffian when all 1-factors receive the same
//! sign.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Edge, Graph, VertexId};
use crate::matching::{enumerate_one_factors, EdgeCycle, OneFactor};
use crate::{Error, Result};

/// Sign of a 1-factor relative to a base factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// Clockwise parity of an even circuit: the parity of the number of its
/// edges directed in agreement with a traversal sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// A direction assignment for every edge of a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    // True: directed from the smaller to the larger endpoint.
    dir: BTreeMap<Edge, bool>,
}

impl Orientation {
    /// The reference orientation directing every edge from its smaller to its
    /// larger endpoint.
    pub fn low_to_high(g: &Graph) -> Self {
        Orientation { dir: g.edges().map(|e| (e, true)).collect() }
    }

    /// Builds an orientation from ordered `(origin, terminus)` pairs.
    ///
    /// The pairs must cover the edge set of `g` exactly once.
    pub fn from_pairs<I: IntoIterator<Item = (VertexId, VertexId)>>(g: &Graph, pairs: I) -> Result<Self> {
        let mut dir = BTreeMap::new();
        for (u, v) in pairs {
            if u == v {
                return Err(Error::HostMismatch("loop in orientation"));
            }
            let e = Edge::new(u, v);
            if !g.contains_edge(e) {
                return Err(Error::UnknownEdge(e));
            }
            if dir.insert(e, u < v).is_some() {
                return Err(Error::HostMismatch("edge directed twice"));
            }
        }
        if dir.len() != g.edge_count() {
            return Err(Error::HostMismatch("orientation does not cover every edge"));
        }
        Ok(Orientation { dir })
    }

    /// Number of directed edges.
    pub fn edge_count(&self) -> usize {
        self.dir.len()
    }

    /// Whether the orientation's domain is exactly the edge set of `g`.
    pub fn fits(&self, g: &Graph) -> bool {
        self.dir.len() == g.edge_count() && g.edges().all(|e| self.dir.contains_key(&e))
    }

    /// The directed pair `(origin, terminus)` of edge `e`.
    pub fn directed(&self, e: Edge) -> Result<(VertexId, VertexId)> {
        match self.dir.get(&e) {
            Some(true) => Ok((e.lo(), e.hi())),
            Some(false) => Ok((e.hi(), e.lo())),
            None => Err(Error::UnknownEdge(e)),
        }
    }

    /// Whether the edge is directed from `u` to `v`.
    pub fn agrees(&self, u: VertexId, v: VertexId) -> Result<bool> {
        let (o, _) = self.directed(Edge::new(u, v))?;
        Ok(o == u)
    }

    /// A copy with the direction of `e` reversed.
    pub fn with_edge_flipped(&self, e: Edge) -> Result<Self> {
        let mut dir = self.dir.clone();
        match dir.get_mut(&e) {
            Some(d) => *d = !*d,
            None => return Err(Error::UnknownEdge(e)),
        }
        Ok(Orientation { dir })
    }

    /// The restriction to the edge set of a subgraph `h`.
    pub fn restricted_to(&self, h: &Graph) -> Result<Self> {
        let mut dir = BTreeMap::new();
        for e in h.edges() {
            match self.dir.get(&e) {
                Some(&d) => {
                    dir.insert(e, d);
                }
                None => return Err(Error::UnknownEdge(e)),
            }
        }
        Ok(Orientation { dir })
    }

    /// Directed pairs in canonical edge order.
    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.dir
            .iter()
            .map(|(e, &d)| if d { (e.lo(), e.hi()) } else { (e.hi(), e.lo()) })
            .collect()
    }

    /// Out-degree of `v`.
    pub fn outdegree(&self, v: VertexId) -> usize {
        self.dir
            .iter()
            .filter(|(e, &d)| e.touches(v) && (if d { e.lo() } else { e.hi() }) == v)
            .count()
    }

    /// In-degree of `v`.
    pub fn indegree(&self, v: VertexId) -> usize {
        self.dir
            .iter()
            .filter(|(e, &d)| e.touches(v) && (if d { e.hi() } else { e.lo() }) == v)
            .count()
    }
}

/// Parity of the permutation carrying `from` to `to`.
///
/// Both slices must enumerate the same elements exactly once.
fn permutation_parity(from: &[VertexId], to: &[VertexId]) -> Result<Sign> {
    debug_assert_eq!(from.len(), to.len());
    let pos: BTreeMap<VertexId, usize> = from.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut perm: Vec<usize> = Vec::with_capacity(to.len());
    for v in to {
        match pos.get(v) {
            Some(&i) => perm.push(i),
            None => return Err(Error::HostMismatch("factors cover different vertex sets")),
        }
    }
    let n = perm.len();
    let mut seen = alloc::vec![false; n];
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
    // A permutation on n elements with c cycles has parity (-1)^(n - c).
    Ok(if (n - cycles) % 2 == 0 { Sign::Plus } else { Sign::Minus })
}

/// The vertex sequence of a factor's directed pairs, edges in canonical order.
fn factor_sequence(o: &Orientation, f: &OneFactor) -> Result<Vec<VertexId>> {
    let mut seq = Vec::with_capacity(2 * f.edges().len());
    for &e in f.edges() {
        let (u, v) = o.directed(e)?;
        seq.push(u);
        seq.push(v);
    }
    Ok(seq)
}

/// Sign of `f` relative to `base` under orientation `o`.
///
/// Both factors must be 1-factors of the same host graph `g`. The result does
/// not depend on the order in which either factor's edges are written.
pub fn factor_sign(g: &Graph, o: &Orientation, base: &OneFactor, f: &OneFactor) -> Result<Sign> {
    if !o.fits(g) {
        return Err(Error::HostMismatch("orientation does not fit the graph"));
    }
    base.validate(g)?;
    f.validate(g)?;
    permutation_parity(&factor_sequence(o, base)?, &factor_sequence(o, f)?)
}

/// A base factor together with the signs of all 1-factors relative to it.
///
/// Rows are in canonical factor order and the base is the canonically first
/// factor, so the table is reproducible. The induced two-block partition of
/// the factors does not depend on the choice of base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedFactorTable {
    pub base: OneFactor,
    pub rows: Vec<(OneFactor, Sign)>,
}

impl SignedFactorTable {
    /// Whether every factor has the same sign.
    pub fn is_constant(&self) -> bool {
        self.rows.iter().all(|(_, s)| *s == Sign::Plus)
            || self.rows.iter().all(|(_, s)| *s == Sign::Minus)
    }

    /// The two sign blocks as sorted factor lists, the block containing the
    /// canonically first factor first.
    pub fn blocks(&self) -> (Vec<OneFactor>, Vec<OneFactor>) {
        let first_sign = self.rows[0].1;
        let mut same = Vec::new();
        let mut other = Vec::new();
        for (f, s) in &self.rows {
            if *s == first_sign {
                same.push(f.clone());
            } else {
                other.push(f.clone());
            }
        }
        (same, other)
    }
}

/// Signs of all 1-factors of `g` under `o`, relative to the canonically
/// first factor.
pub fn sign_table(g: &Graph, o: &Orientation) -> Result<SignedFactorTable> {
    let factors = enumerate_one_factors(g);
    let base = factors.first().cloned().ok_or(Error::NoFactors)?;
    let mut rows = Vec::with_capacity(factors.len());
    for f in factors {
        let s = factor_sign(g, o, &base, &f)?;
        rows.push((f, s));
    }
    Ok(SignedFactorTable { base, rows })
}

/// Clockwise parity of an even circuit under `o`.
///
/// Uses the circuit's stored sense if present, its canonical sense otherwise;
/// for even circuits the parity does not depend on the sense. Odd circuits
/// are refused, since their parity would.
pub fn clockwise_parity(c: &EdgeCycle, o: &Orientation) -> Result<Parity> {
    if c.len() % 2 != 0 {
        return Err(Error::OddCircuit);
    }
    let sense = c.sense_or_canonical();
    let mut agreements = 0usize;
    for i in 0..sense.len() {
        let u = sense[i];
        let v = sense[(i + 1) % sense.len()];
        if o.agrees(u, v)? {
            agreements += 1;
        }
    }
    Ok(if agreements % 2 == 0 { Parity::Even } else { Parity::Odd })
}
