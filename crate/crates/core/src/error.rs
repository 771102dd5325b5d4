use thiserror::Error;

/// Errors raised by graph construction and parsing.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("edge ({u}, {v}) is out of range for a graph on {n} nodes")]
    NodeOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("permutation of length {perm} applied to a graph on {n} nodes")]
    LengthMismatch { perm: usize, n: usize },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("unknown fixture graph `{0}`")]
    UnknownFixture(String),
}

/// A parse failure, located by byte offset (graph6) or line number (edge list).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("byte {offset}: non-printable or out-of-range byte 0x{byte:02x}")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("byte {offset}: input ended inside the size header")]
    TruncatedHeader { offset: usize },
    #[error("byte {offset}: expected {expected} body bytes for n={n}, found {found}")]
    BodyLength {
        offset: usize,
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("byte {offset}: padding bits are not zero")]
    Padding { offset: usize },
    #[error("byte 0: empty input")]
    EmptyInput,
    #[error("byte 0: graph6 size {0} is not supported (n must be at least 1)")]
    ZeroNodes(usize),
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
}

/// Numerical failures in the spectral kernel and encoders.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric: |M[{i},{j}] - M[{j},{i}]| = {diff:e}")]
    NotSymmetric { i: usize, j: usize, diff: f64 },
    #[error("eigenvalue {index} did not converge within {sweeps} iterations")]
    NoConvergence { index: usize, sweeps: usize },
    #[error("target dimension {m} outside 1..={max}")]
    Dimension { m: usize, max: usize },
    #[error("invalid encoder configuration: {0}")]
    Config(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IsoError {
    #[error("exact isomorphism is capped at {cap} nodes, got {n}")]
    SizeCap { n: usize, cap: usize },
    #[error("calibration corpus is empty")]
    EmptyCorpus,
    #[error("calibration needs at least one trial per graph")]
    NoTrials,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
