//! Error types shared across the crate.

use thiserror::Error;

/// Which side of the game a structural error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Leader,
    Follower,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Leader => write!(f, "leader"),
            Side::Follower => write!(f, "follower"),
        }
    }
}

/// How a group family fails to partition the ground set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionDefect {
    /// The element appears in more than one group.
    Overlapping,
    /// The element appears in no group.
    Uncovered,
    /// A group references an element outside `0..n`.
    OutOfRange,
}

impl std::fmt::Display for PartitionDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PartitionDefect::Overlapping => write!(f, "appears in more than one group"),
            PartitionDefect::Uncovered => write!(f, "is not covered by any group"),
            PartitionDefect::OutOfRange => write!(f, "is outside the ground set"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set is empty")]
    EmptyGroundSet,

    #[error("weight of element {index} is negative")]
    NegativeWeight { index: usize },

    #[error("weight of element {index} is not a decimal rational: {text:?}")]
    MalformedWeight { index: usize, text: String },

    #[error("{side} groups do not partition the ground set: element {element} {defect}")]
    NonPartition {
        side: Side,
        element: usize,
        defect: PartitionDefect,
    },

    #[error("{side} side declares {groups} groups but {budgets} budgets")]
    BudgetCountMismatch {
        side: Side,
        groups: usize,
        budgets: usize,
    },

    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("scaled weights exceed the exact-arithmetic bound (63-bit signed magnitude)")]
    ScaleOverflow,

    #[error("element {index} is already blocked")]
    AlreadyBlocked { index: usize },

    #[error("element index {index} out of range for ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("instance too large for this solver: {what} = {value} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("dual enumeration needs {required} breakpoint vectors, budget is {budget}")]
    EnumerationBudgetExceeded { required: u128, budget: u64 },

    #[error("dp value table needs {required} states, budget is {budget}")]
    MemoryBudgetExceeded { required: u128, budget: u64 },

    #[error("stage action exceeds the residual budget of leader group {group}")]
    BudgetUnderflow { group: usize },

    #[error("stage action is not valid for any state: {reason}")]
    InvalidAction { reason: String },

    #[error("graph has no edges; the reduction is undefined")]
    EdgelessGraph,

    #[error("target size q = {q} out of range 0..={num_vertices}")]
    QOutOfRange { q: usize, num_vertices: usize },

    #[error("vertex {v} out of range for graph with {num_vertices} vertices")]
    VertexOutOfRange { v: usize, num_vertices: usize },

    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },

    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },

    #[error("infeasible generator parameters: {0}")]
    InfeasibleParams(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    SyntaxError {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error at line {line}, column {column}: {message}")]
    SchemaError {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
