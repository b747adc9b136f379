use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported Coxeter order {m} between {s} and {t}")]
    UnsupportedOrder { s: usize, t: usize, m: u32 },
    #[error("malformed Coxeter matrix: {0}")]
    MalformedMatrix(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown system preset `{0}`")]
    UnknownPreset(String),
    #[error("integer overflow in matrix arithmetic")]
    Overflow,
    #[error("root closure exceeded cap of {cap} roots")]
    CapExceeded { cap: usize },
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("reflection does not shorten the element")]
    NotShortening,
    #[error("word is not pure")]
    NotPure,
    #[error("factorization value is not the identity")]
    NotIdentity,
    #[error("move index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("parse error at token {index}: {msg}")]
    Parse { index: usize, msg: String },
    #[error("zero functional")]
    ZeroFunctional,
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("degree {0} exceeds cap")]
    DegreeCap(usize),
    #[error("genus {0} out of supported range")]
    GenusRange(usize),
    #[error("unsupported stabilizer presentation")]
    UnsupportedStabilizerPresentation,
    #[error("malformed monodromy: {0}")]
    MalformedMonodromy(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
