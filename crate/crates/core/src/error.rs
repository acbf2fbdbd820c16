use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operator is not trace-computable: {0}")]
    NotTraceComputable(String),
    #[error("off-diagonal block product is not trace-computable: {0}")]
    BlockNotTraceComputable(String),
    #[error("family members {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("symbol is known down to degree {floor} but degree {needed} was requested")]
    DepthInsufficient { needed: i64, floor: i64 },
    #[error("unknown built-in `{0}`")]
    UnknownBuiltin(String),
    #[error("closed form and enumeration disagree: {0}")]
    InternalMismatch(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid document: {0}")]
    Document(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("unbound name `{0}`")]
    UnboundName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
