use core::fmt;

use crate::model::NodeId;

/// Errors raised by the reduction engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A spin or node index is outside the instance.
    IndexOutOfRange { index: usize, len: usize },
    /// A coupling `(i, i)` was supplied.
    SelfCoupling(usize),
    /// The total absolute weight of an instance exceeds [`crate::model::MAX_TOTAL_WEIGHT`].
    WeightOverflow,
    /// A configuration has the wrong number of entries.
    LengthMismatch { expected: usize, found: usize },
    /// A spin value other than -1 or +1.
    InvalidSpin(i64),
    /// The node has been merged away.
    DeadNode(NodeId),
    /// An operation needs two distinct nodes.
    SameNode(NodeId),
    /// The pair is not joined by an edge.
    EdgeAbsent(NodeId, NodeId),
    /// An exhaustive routine was asked to enumerate too much.
    TooLarge { size: usize, limit: usize },
    /// A group must contain at least two nodes.
    GroupTooSmall(usize),
    /// A triple needs at least two internal edges.
    SparseTriple,
    /// Strict relations claim both "same side" and "opposite sides" for a pair.
    Contradiction(NodeId, NodeId),
    /// The candidate budget must be at least one.
    InvalidAlpha(usize),
    /// More minimisers than the oracle is willing to store.
    TooManyMinimizers { limit: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for {len} entries")
            }
            Error::SelfCoupling(i) => write!(f, "self-coupling on spin {i}"),
            Error::WeightOverflow => write!(f, "total absolute weight exceeds 2^60"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
            Error::InvalidSpin(v) => write!(f, "spin value {v} is not -1 or +1"),
            Error::DeadNode(u) => write!(f, "node {u} is not live"),
            Error::SameNode(u) => write!(f, "operation needs two distinct nodes, got {u} twice"),
            Error::EdgeAbsent(u, v) => write!(f, "no edge between {u} and {v}"),
            Error::TooLarge { size, limit } => {
                write!(f, "instance of size {size} exceeds the exhaustive limit {limit}")
            }
            Error::GroupTooSmall(k) => write!(f, "group of size {k} needs at least 2 nodes"),
            Error::SparseTriple => write!(f, "triple has fewer than 2 internal edges"),
            Error::Contradiction(u, v) => {
                write!(f, "strict relations disagree on the parity of nodes {u} and {v}")
            }
            Error::InvalidAlpha(a) => write!(f, "alpha must be at least 1, got {a}"),
            Error::TooManyMinimizers { limit } => {
                write!(f, "more than {limit} minimisers; use the streaming interface")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
