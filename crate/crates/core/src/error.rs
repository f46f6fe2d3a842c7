use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge {edge} has {size} vertices; edges need at least two")]
    EdgeTooSmall { edge: usize, size: usize },
    #[error("edge {smaller} is contained in edge {larger}")]
    ComparableEdges { smaller: usize, larger: usize },
    #[error("edges {first} and {second} are identical")]
    DuplicateEdge { first: usize, second: usize },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex label `{0}` appears twice")]
    DuplicateLabel(String),
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("edge index {0} appears twice in the family")]
    DuplicateIndex(usize),
    #[error("hypergraph is not uniform")]
    NotUniform,
    #[error("hypergraph is not a graph")]
    NotAGraph,
    #[error("hypergraph is not uniform with all intersecting edge pairs meeting in d-1 vertices")]
    NotSpecialClass,
    #[error("hypergraph is not triangulated")]
    NotTriangulated,
    #[error("vertex {0} is not simplicial")]
    NotSimplicial(usize),
    #[error("edge {edge} does not contain vertex {vertex}")]
    VertexNotInEdge { vertex: usize, edge: usize },
    #[error("{what} is {size}, above the cap of {cap}")]
    SizeCapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("{edges} edges exceed the enumeration budget of {cap}")]
    BudgetExceeded { edges: usize, cap: usize },
    #[error("bouquets are not strongly disjoint: {0}")]
    NotStronglyDisjoint(String),
    #[error("family is not a self disjoint set")]
    NotSelfDisjoint,
    #[error("invalid symbol chain: {0}")]
    InvalidChain(String),
    #[error("invalid edge ordering: {0}")]
    InvalidOrdering(String),
    #[error("certificate premise fails: {0}")]
    PremiseFails(String),
    #[error("beta_{{{i},{j}}} vanishes although a certificate claims otherwise")]
    BettiVanishes { i: usize, j: usize },
    #[error("violation of `{check}`: {detail}")]
    ViolationFound {
        check: String,
        detail: String,
        instance: String,
    },
    #[error("label `{0}` cannot be written in edge-list form")]
    UnrepresentableLabel(String),
    #[error("invalid field `{0}`")]
    InvalidField(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
