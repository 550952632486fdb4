//! Text and JSON formats.
//!
//! Graph files are line based: `v <id> [label]` declares a vertex, `e <u>
//! <v>` an undirected edge; `#` starts a comment and blank lines are
//! ignored. Orientation files use `a <origin> <terminus>` lines with the same
//! comment rules and must direct every edge exactly once. JSON output uses
//! sorted keys throughout so byte-for-byte comparisons are meaningful.

use std::collections::BTreeMap;
use std::fmt;

use pfaffian_core::characterize::{ReductionStep, SubdivisionCertificate, TargetKind, Witness};
use pfaffian_core::graph::{contract, Graph, VertexId};
use pfaffian_core::matching::{EdgeCycle, OneFactor};
use pfaffian_core::nearbip::NearBipartiteCertificate;
use pfaffian_core::orient::SignedFactorTable;
use pfaffian_core::{Edge, Orientation, Sign};
use serde_json::{json, Map, Value};

/// A parse failure with the offending line number (1-based).
#[derive(Debug)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: {}", self.line, self.message)
        } else {
            write!(f, "{}", self.message)
        }
    }
}

impl std::error::Error for FormatError {}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

/// A graph together with its optional vertex labels.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub labels: BTreeMap<VertexId, String>,
}

/// Parses the shared graph text format.
pub fn parse_graph(text: &str) -> Result<ParsedGraph, FormatError> {
    let mut graph = Graph::new();
    let mut labels = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("v") => {
                let id: VertexId = tok
                    .next()
                    .ok_or_else(|| err(lineno, "v needs a vertex id"))?
                    .parse()
                    .map_err(|_| err(lineno, "vertex id must be a nonnegative integer"))?;
                graph.add_vertex(id);
                if let Some(label) = tok.next() {
                    labels.insert(id, label.to_string());
                }
                if tok.next().is_some() {
                    return Err(err(lineno, "too many fields on v line"));
                }
            }
            Some("e") => {
                let u: VertexId = tok
                    .next()
                    .ok_or_else(|| err(lineno, "e needs two vertex ids"))?
                    .parse()
                    .map_err(|_| err(lineno, "vertex id must be a nonnegative integer"))?;
                let v: VertexId = tok
                    .next()
                    .ok_or_else(|| err(lineno, "e needs two vertex ids"))?
                    .parse()
                    .map_err(|_| err(lineno, "vertex id must be a nonnegative integer"))?;
                if tok.next().is_some() {
                    return Err(err(lineno, "too many fields on e line"));
                }
                if u == v {
                    return Err(err(lineno, "loop edges are not allowed"));
                }
                // Implicitly declare endpoints for convenience.
                graph.add_vertex(u);
                graph.add_vertex(v);
                graph.add_edge(u, v).map_err(|e| err(lineno, e.to_string()))?;
            }
            Some(other) => {
                return Err(err(lineno, format!("unknown record '{other}'")));
            }
            None => unreachable!("blank lines are skipped"),
        }
    }
    if graph.is_empty() {
        return Err(err(0, "graph file declares no vertices"));
    }
    Ok(ParsedGraph { graph, labels })
}

/// Parses an orientation file against a host graph.
pub fn parse_orientation(text: &str, g: &Graph) -> Result<Orientation, FormatError> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some("a") => {
                let u: VertexId = tok
                    .next()
                    .ok_or_else(|| err(lineno, "a needs two vertex ids"))?
                    .parse()
                    .map_err(|_| err(lineno, "vertex id must be a nonnegative integer"))?;
                let v: VertexId = tok
                    .next()
                    .ok_or_else(|| err(lineno, "a needs two vertex ids"))?
                    .parse()
                    .map_err(|_| err(lineno, "vertex id must be a nonnegative integer"))?;
                if tok.next().is_some() {
                    return Err(err(lineno, "too many fields on a line"));
                }
                if u == v || !g.has_edge(u, v) {
                    return Err(err(lineno, format!("({u},{v}) is not an edge of the graph")));
                }
                pairs.push((u, v));
            }
            Some(other) => return Err(err(lineno, format!("unknown record '{other}'"))),
            None => unreachable!(),
        }
    }
    Orientation::from_pairs(g, pairs).map_err(|e| err(0, e.to_string()))
}

/// Writes the graph text format, labels included where known.
pub fn write_graph(g: &Graph, labels: &BTreeMap<VertexId, String>) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        match labels.get(&v) {
            Some(l) => out.push_str(&format!("v {v} {l}\n")),
            None => out.push_str(&format!("v {v}\n")),
        }
    }
    for e in g.edges() {
        out.push_str(&format!("e {} {}\n", e.lo(), e.hi()));
    }
    out
}

/// Writes an orientation as `a` lines in canonical edge order.
pub fn write_orientation(o: &Orientation) -> String {
    let mut out = String::new();
    for (u, v) in o.pairs() {
        out.push_str(&format!("a {u} {v}\n"));
    }
    out
}

/// The display name of a vertex: its label when known, its id otherwise.
pub fn vertex_name(labels: &BTreeMap<VertexId, String>, v: VertexId) -> String {
    labels.get(&v).cloned().unwrap_or_else(|| v.to_string())
}

/// Renders a factor as `(a,b)(c,d)` using labels where known.
pub fn factor_text(f: &OneFactor, labels: &BTreeMap<VertexId, String>) -> String {
    f.edges()
        .iter()
        .map(|e| format!("({},{})", vertex_name(labels, e.lo()), vertex_name(labels, e.hi())))
        .collect()
}

/// Renders a circuit's traversal as `a-b-c-d`.
pub fn cycle_text(c: &EdgeCycle, labels: &BTreeMap<VertexId, String>) -> String {
    c.sense_or_canonical()
        .iter()
        .map(|&v| vertex_name(labels, v))
        .collect::<Vec<_>>()
        .join("-")
}

fn edge_json(e: Edge) -> Value {
    json!([e.lo(), e.hi()])
}

fn edges_json(edges: &[Edge]) -> Value {
    Value::Array(edges.iter().map(|&e| edge_json(e)).collect())
}

pub fn factor_json(f: &OneFactor) -> Value {
    edges_json(f.edges())
}

pub fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

pub fn sign_table_json(t: &SignedFactorTable) -> Value {
    json!({
        "base": factor_json(&t.base),
        "rows": t.rows.iter().map(|(f, s)| json!({
            "factor": factor_json(f),
            "sign": sign_str(*s),
        })).collect::<Vec<_>>(),
    })
}

pub fn certificate_json(c: &NearBipartiteCertificate) -> Value {
    json!({
        "e1": edge_json(c.e1),
        "e2": edge_json(c.e2),
        "m": c.bipartition.m.iter().copied().collect::<Vec<_>>(),
        "n": c.bipartition.n.iter().copied().collect::<Vec<_>>(),
        "factor": factor_json(&c.factor),
    })
}

fn chain_key(e: Edge) -> String {
    format!("{}-{}", e.lo(), e.hi())
}

fn parse_chain_key(s: &str) -> Option<Edge> {
    let (a, b) = s.split_once('-')?;
    let u: VertexId = a.parse().ok()?;
    let v: VertexId = b.parse().ok()?;
    if u == v {
        return None;
    }
    Some(Edge::new(u, v))
}

/// Serialises a witness: target, subgraph edge list, reduction circuits as
/// vertex lists, chain map, and the complement factor.
pub fn witness_json(w: &Witness) -> Value {
    let mut chains = Map::new();
    for (e, path) in &w.certificate.chains {
        chains.insert(chain_key(*e), json!(path));
    }
    json!({
        "target": w.certificate.target.name(),
        "J": edges_json(&w.subgraph),
        "steps": w.steps.iter().map(|s| json!(s.circuit.sense_or_canonical())).collect::<Vec<_>>(),
        "chains": Value::Object(chains),
        "complement_factor": factor_json(&w.complement_factor),
        "vertex_map": w.certificate.vertex_map.iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect::<Map<String, Value>>(),
    })
}

fn value_edge(v: &Value) -> Option<Edge> {
    let arr = v.as_array()?;
    if arr.len() != 2 {
        return None;
    }
    let a = arr[0].as_u64()? as VertexId;
    let b = arr[1].as_u64()? as VertexId;
    if a == b {
        return None;
    }
    Some(Edge::new(a, b))
}

/// Reconstructs a witness from its JSON form, replaying the reduction steps
/// against the host graph.
pub fn witness_from_json(g: &Graph, v: &Value) -> Result<Witness, FormatError> {
    let obj = v.as_object().ok_or_else(|| err(0, "witness must be a JSON object"))?;
    let target = TargetKind::parse(
        obj.get("target")
            .and_then(Value::as_str)
            .ok_or_else(|| err(0, "missing target"))?,
    )
    .map_err(|e| err(0, e.to_string()))?;

    let subgraph: Vec<Edge> = obj
        .get("J")
        .and_then(Value::as_array)
        .ok_or_else(|| err(0, "missing J"))?
        .iter()
        .map(|e| value_edge(e).ok_or_else(|| err(0, "bad edge in J")))
        .collect::<Result<_, _>>()?;

    let mut current = g
        .edge_subgraph(subgraph.iter())
        .map_err(|e| err(0, e.to_string()))?;
    let mut steps: Vec<ReductionStep> = Vec::new();
    for s in obj
        .get("steps")
        .and_then(Value::as_array)
        .ok_or_else(|| err(0, "missing steps"))?
    {
        let seq: Vec<VertexId> = s
            .as_array()
            .ok_or_else(|| err(0, "step must be a vertex list"))?
            .iter()
            .map(|x| x.as_u64().map(|n| n as VertexId).ok_or_else(|| err(0, "bad vertex in step")))
            .collect::<Result<_, _>>()?;
        let circuit = EdgeCycle::from_sense(seq).map_err(|e| err(0, e.to_string()))?;
        let result =
            contract(&current, &circuit.vertices()).map_err(|e| err(0, e.to_string()))?;
        steps.push(ReductionStep { circuit, result: result.clone() });
        current = result;
    }

    let mut chains = BTreeMap::new();
    for (k, path) in obj
        .get("chains")
        .and_then(Value::as_object)
        .ok_or_else(|| err(0, "missing chains"))?
    {
        let e = parse_chain_key(k).ok_or_else(|| err(0, format!("bad chain key '{k}'")))?;
        let p: Vec<VertexId> = path
            .as_array()
            .ok_or_else(|| err(0, "chain must be a vertex list"))?
            .iter()
            .map(|x| x.as_u64().map(|n| n as VertexId).ok_or_else(|| err(0, "bad vertex in chain")))
            .collect::<Result<_, _>>()?;
        chains.insert(e, p);
    }
    let mut vertex_map = BTreeMap::new();
    for (k, v) in obj
        .get("vertex_map")
        .and_then(Value::as_object)
        .ok_or_else(|| err(0, "missing vertex_map"))?
    {
        let from: VertexId = k.parse().map_err(|_| err(0, "bad vertex_map key"))?;
        let to = v.as_u64().ok_or_else(|| err(0, "bad vertex_map value"))? as VertexId;
        vertex_map.insert(from, to);
    }
    let complement_factor = OneFactor::new(
        obj.get("complement_factor")
            .and_then(Value::as_array)
            .ok_or_else(|| err(0, "missing complement_factor"))?
            .iter()
            .map(|e| value_edge(e).ok_or_else(|| err(0, "bad edge in complement_factor")))
            .collect::<Result<Vec<_>, _>>()?,
    );

    Ok(Witness {
        subgraph,
        steps,
        certificate: SubdivisionCertificate { target, vertex_map, chains },
        complement_factor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_roundtrip() {
        let text = "# a square\nv 0 a\nv 1 b\nv 2\nv 3\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n";
        let parsed = parse_graph(text).unwrap();
        assert_eq!(parsed.graph.vertex_count(), 4);
        assert_eq!(parsed.graph.edge_count(), 4);
        assert_eq!(parsed.labels[&0], "a");
        let written = write_graph(&parsed.graph, &parsed.labels);
        let reparsed = parse_graph(&written).unwrap();
        assert_eq!(reparsed.graph, parsed.graph);
        assert_eq!(reparsed.labels, parsed.labels);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "v 0\nv 1\nz 0 1\n";
        let e = parse_graph(bad).unwrap_err();
        assert_eq!(e.line, 3);
        let loopy = "e 2 2\n";
        assert_eq!(parse_graph(loopy).unwrap_err().line, 1);
    }

    #[test]
    fn orientation_requires_full_cover() {
        let g = parse_graph("e 0 1\ne 1 2\n").unwrap().graph;
        assert!(parse_orientation("a 0 1\n", &g).is_err());
        let o = parse_orientation("a 1 0\na 1 2\n", &g).unwrap();
        assert_eq!(o.directed(Edge::new(0, 1)).unwrap(), (1, 0));
    }
}
