use thiserror::Error;

/// Errors raised by the word, rewriting, library and invariant layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid genus {0}")]
    InvalidGenus(u32),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("duplicate curve `{0}`")]
    DuplicateCurve(String),
    #[error("unknown placement `{0}`")]
    UnknownPlacement(String),
    #[error("invalid chain boundary: {0}")]
    InvalidBoundary(String),
    #[error("words live on different ambient configurations")]
    AmbientMismatch,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("homology class of `{curve}` has length {got}, expected {expected}")]
    ClassLength {
        curve: String,
        got: usize,
        expected: usize,
    },
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("index {index} out of bounds for word of length {len}")]
    OutOfBounds { index: usize, len: usize },
    #[error("relator target is not the identity")]
    NonIdentityTarget,
    #[error("relator is not positive")]
    NotPositive,
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("subword mismatch at {at}: {detail}")]
    SubwordMismatch { at: usize, detail: String },
    #[error("relation `{0}` fails the homology check")]
    RelationNotHomologous(String),
    #[error("missing separation data for `{0}`")]
    MissingSepType(String),
    #[error("signature is not an integer: {0}")]
    NonIntegralSignature(String),
    #[error("holomorphic Euler characteristic is not an integer: (e + sigma) = {0}")]
    NonIntegralChi(i64),
    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),
    #[error("hash mismatch at step {step}: expected {expected}, found {found}")]
    HashMismatch {
        step: usize,
        expected: String,
        found: String,
    },
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
