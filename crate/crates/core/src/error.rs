use thiserror::Error;

/// Errors raised by the library. Vertex labels in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count {n} exceeds the cap of {cap}")]
    TooManyVertices { n: usize, cap: usize },

    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {vertex} is not allowed")]
    Loop { vertex: usize },

    #[error("vertex counts differ ({left} vs {right})")]
    VertexCountMismatch { left: usize, right: usize },

    #[error("epsilon matrix is not symmetric at ({i},{j})")]
    Asymmetric { i: usize, j: usize },

    #[error("epsilon matrix diagonal entry ({i},{i}) must be +1")]
    NonUnitDiagonal { i: usize },

    #[error("epsilon entry at ({i},{j}) must be +1 or -1, got {value}")]
    InvalidEntry { i: usize, j: usize, value: String },

    #[error("type vector needs at least 2 vertices, got {n}")]
    TypeUndefined { n: usize },

    #[error("operation needs at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },

    #[error("complete-union type formula needs at least two parts, got {parts}")]
    TooFewParts { parts: usize },

    #[error("complete-union part sizes must be positive")]
    ZeroPart,

    #[error("facet family is not an antichain: {0}")]
    NotAntichain(String),

    #[error("facet family does not cover vertex {vertex}")]
    NotCovering { vertex: usize },

    #[error("switching-equivalence routes disagree (certificate: {certificate}, switching graph: {switching_graph})")]
    RouteDisagreement {
        certificate: bool,
        switching_graph: bool,
    },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
