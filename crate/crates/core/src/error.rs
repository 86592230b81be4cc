use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("trivalent vertex t{vertex} has {filled} filled slots, expected 3")]
    NonTrivalentVertex { vertex: usize, filled: usize },

    #[error("leg l{leg} does not lie on any circle")]
    LegOnNoCircle { leg: usize },

    #[error("dangling slot: {what}")]
    DanglingSlot { what: String },

    #[error("declared degree {declared} does not match computed degree {computed}")]
    DegreeDeclaration { declared: usize, computed: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("skeleton has no circles")]
    EmptySkeleton,

    #[error("degree mismatch: space has degree {expected}, diagram has degree {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("diagram is not part of the enumerated space: {0}")]
    UnknownDiagram(String),

    #[error("matrix entry at ({row}, {col}) is not an integer")]
    NonIntegralEntry { row: usize, col: usize },

    #[error("malformed canonical code")]
    BadCode,

    #[error("{0} is not a permutation of 1..={1}")]
    BadPermutation(String, usize),

    #[error("trees cannot be glued: {0}")]
    LegMultiplicityMismatch(String),

    #[error("insertion spec places {given} circles, {expected} required")]
    IncompleteSpec { given: usize, expected: usize },

    #[error("edge {edge} out of range (diagram has {edges} edges)")]
    EdgeOutOfRange { edge: usize, edges: usize },

    #[error("invalid insertion: {0}")]
    BadInsertion(String),

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("the two ends of a linear tree must be distinct legs")]
    SameEnds,

    #[error("degree {n} is below the minimum {min}")]
    DegreeTooSmall { n: usize, min: usize },

    #[error("{leaves} special leaves exceed the n+2 = {max} leaves of the tree")]
    TooManyLeaves { leaves: usize, max: usize },

    #[error("bad site: {0}")]
    BadSite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
