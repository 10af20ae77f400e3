//! Crate-wide error type.
//!
//! Every fallible public function returns [`Result`]. Parse errors carry the
//! file path and 1-based line number of the offending record; structural
//! errors name the nodes or labels involved so callers can report them
//! without re-deriving context.

use thiserror::Error;

/// Errors produced by graph construction, ingest, and analysis.
#[derive(Debug, Error)]
pub enum Error {
    /// An edge joins a node to itself; the model has no self-ties.
    #[error("self-loop on '{0}': edges must join two distinct nodes")]
    SelfLoop(String),

    /// An edge multiplicity of zero (or below) was supplied.
    #[error("edge '{a}' -- '{b}' has multiplicity {got}; must be at least 1")]
    BadMultiplicity { a: String, b: String, got: i64 },

    /// Accumulated edge multiplicity no longer fits the weight type.
    #[error("edge '{a}' -- '{b}' multiplicity overflows u32")]
    WeightOverflow { a: String, b: String },

    /// A partition label was requested that no node carries.
    #[error("unknown partition label '{0}'")]
    UnknownPartition(String),

    /// An attribute name was requested that no node carries.
    #[error("unknown attribute '{0}'")]
    UnknownAttribute(String),

    /// The operation needs a non-empty graph.
    #[error("graph has no nodes")]
    EmptyGraph,

    /// The operation is only defined on a connected graph.
    #[error("{context}: graph is disconnected; extract the giant component first")]
    Disconnected { context: &'static str },

    /// The operation needs more nodes than the graph has.
    #[error("{context}: need at least {needed} nodes, got {got}")]
    TooSmall {
        context: &'static str,
        needed: usize,
        got: usize,
    },

    /// More pivots were requested than there are nodes to choose from.
    #[error("requested {pivots} pivots but the graph has {n} nodes")]
    TooManyPivots { pivots: usize, n: usize },

    /// A top-k cutoff outside 1..=scope size.
    #[error("k = {k} is out of range for a scope of {scope} nodes")]
    KOutOfRange { k: usize, scope: usize },

    /// A rank scope with no members.
    #[error("{context}: scope is empty")]
    EmptyScope { context: &'static str },

    /// A node was passed to an operation whose ranking scope excludes it.
    #[error("{context}: node {node} is not in the ranking scope")]
    NotInScope { context: &'static str, node: u32 },

    /// Distance sampling with a zero pair budget.
    #[error("sample_pairs must be at least 1")]
    NoSamplePairs,

    /// A probability parameter outside [0, 1].
    #[error("{name} = {value} is not a probability in [0, 1]")]
    BadProbability { name: &'static str, value: f64 },

    /// A malformed input record. `line` is 1-based within `path`.
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: u64,
        msg: String,
    },

    /// Two metadata records describe the same entity.
    #[error("{path}:{line}: duplicate metadata for entity '{entity}'")]
    DuplicateMetadata {
        path: String,
        line: u64,
        entity: String,
    },

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
