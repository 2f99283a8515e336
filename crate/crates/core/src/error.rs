use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gain has zero modulus")]
    ZeroGain,
    #[error("gain modulus {modulus} is not within 1e-6 of 1")]
    NonUnitGain { modulus: f64 },
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge {{{u},{v}}}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("walk is empty")]
    EmptyWalk,
    #[error("vertices {from} and {to} are not adjacent")]
    NotAWalk { from: usize, to: usize },
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("edge {{{u},{v}}} has non-positive weight {weight}")]
    InvalidWeight { u: usize, v: usize, weight: f64 },
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("invalid vertex ordering: {0}")]
    InvalidOrdering(String),
    #[error("switching function has length {found}, graph has {expected} vertices")]
    SwitchingLength { expected: usize, found: usize },
    #[error("graph is disconnected: no path from {u} to {v}")]
    Disconnected { u: usize, v: usize },
    #[error("more than {cap} shortest paths between {u} and {v}")]
    PathExplosion { u: usize, v: usize, cap: usize },
    #[error("enumeration too large: {reason}")]
    TooLarge { reason: String },
    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("edge subset is not part of the graph: index {index}")]
    UnknownEdge { index: usize },
}
