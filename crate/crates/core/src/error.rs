use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid cyclic factor {0}: factors must be at least 1")]
    InvalidFactor(i64),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderTooLarge { order: u128, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("operands live in different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },
    #[error("{0} must be non-empty")]
    EmptySet(&'static str),
    #[error("k = {k} out of range 0..={max}")]
    KOutOfRange { k: i64, max: usize },
    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("set does not generate the group")]
    NotGenerating,
    #[error("set is not symmetric")]
    NotSymmetric,
    #[error("set contains an element of order at most two")]
    SmallOrderElement,
    #[error("claim {0} has no closed-form right-hand side")]
    NoClosedForm(String),
    #[error("malformed auxiliary input: {0}")]
    MalformedAux(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("infeasible constraints: {0}")]
    InfeasibleConstraints(String),
    /// A checked identity that must hold unconditionally failed; this is a bug
    /// in a kernel, not a mathematical finding.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("line {line}: {message}")]
    CorruptRecord { line: usize, message: String },
    #[error("version mismatch: manifest written by {found}, this is {expected}")]
    VersionMismatch { found: String, expected: String },
    #[error("manifest does not match this run: {0}")]
    ManifestMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
