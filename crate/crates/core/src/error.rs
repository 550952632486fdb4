use core::fmt;

use crate::graph::{Edge, VertexId};

/// Errors reported by graph operations and searches.
///
/// Mathematical "no" answers (no bipartition, no witness, non-Pfaffian) are
/// `None`/`false` returns, not errors; errors signal misuse or exhausted
/// budgets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vertex id that is not declared in the host graph.
    UnknownVertex(VertexId),
    /// An edge that is not present in the host graph.
    UnknownEdge(Edge),
    /// The empty graph or an empty set where a nonempty one is required.
    EmptyInput,
    /// An edge set that does not form a single circuit.
    NotACircuit,
    /// Clockwise parity was requested for an odd circuit.
    OddCircuit,
    /// A vertex does not have the degree required by the operation.
    WrongDegree { vertex: VertexId, expected: usize, actual: usize },
    /// Suppression was applied to a graph that is a bare circuit.
    BareCircuit,
    /// Suppression would create a loop or a multiple edge.
    NotASubdivision,
    /// The graph must be connected for this operation.
    Disconnected,
    /// A walk or path violates the hypotheses of its decomposition.
    WalkHypothesis(&'static str),
    /// Two paths whose endpoints do not match as required.
    EndpointMismatch,
    /// Two directed paths traverse a common edge in opposite directions.
    AntiparallelOverlap,
    /// A 1-factor, bipartition or orientation does not fit the host graph.
    HostMismatch(&'static str),
    /// The graph has no 1-factor but the operation requires one.
    NoFactors,
    /// The graph is not 1-extendible but the operation requires it.
    NotOneExtendible(Edge),
    /// The supplied orientation does not satisfy the operation's precondition.
    PreconditionViolated(&'static str),
    /// An enumeration or search exceeded its configured budget.
    BudgetExceeded(&'static str),
    /// The graph is too large for the fixed-width internal representation.
    TooLarge(&'static str),
    /// Unknown builtin fixture name.
    UnknownBuiltin,
    /// Two independently computed answers disagree. Always a bug.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnknownVertex(v) => write!(f, "unknown vertex id {v}"),
            Error::UnknownEdge(e) => write!(f, "edge {e} is not in the graph"),
            Error::EmptyInput => write!(f, "operation requires a nonempty input"),
            Error::NotACircuit => write!(f, "edge set does not form a single circuit"),
            Error::OddCircuit => write!(f, "clockwise parity is undefined for odd circuits"),
            Error::WrongDegree { vertex, expected, actual } => {
                write!(f, "vertex {vertex} has degree {actual}, expected {expected}")
            }
            Error::BareCircuit => write!(f, "suppression of a bare circuit has no base graph"),
            Error::NotASubdivision => {
                write!(f, "suppression would create a loop or multiple edge")
            }
            Error::Disconnected => write!(f, "graph must be connected"),
            Error::WalkHypothesis(what) => write!(f, "walk hypothesis violated: {what}"),
            Error::EndpointMismatch => write!(f, "path endpoints do not match"),
            Error::AntiparallelOverlap => {
                write!(f, "paths traverse a common edge in opposite directions")
            }
            Error::HostMismatch(what) => write!(f, "host mismatch: {what}"),
            Error::NoFactors => write!(f, "graph has no 1-factor"),
            Error::NotOneExtendible(e) => {
                write!(f, "graph is not 1-extendible: edge {e} lies in no 1-factor")
            }
            Error::PreconditionViolated(what) => write!(f, "precondition violated: {what}"),
            Error::BudgetExceeded(what) => write!(f, "budget exceeded: {what}"),
            Error::TooLarge(what) => write!(f, "input too large: {what}"),
            Error::UnknownBuiltin => write!(f, "unknown builtin fixture name"),
            Error::Internal(what) => write!(f, "internal consistency failure: {what}"),
        }
    }
}
