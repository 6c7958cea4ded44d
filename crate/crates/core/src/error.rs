use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{what}: order {order} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        order: u64,
        limit: u64,
    },

    #[error("element is not a member of the group")]
    NotMember,

    #[error("not a subgroup of the parent group")]
    NotSubgroup,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("GF({q}) is not in the field table (supported: {supported})")]
    UnsupportedField { q: u32, supported: String },

    #[error("{path}: {msg}")]
    Io { path: String, msg: String },

    #[error("line {line}: {msg}")]
    DataParse { line: usize, msg: String },

    #[error("corrupt data: {0}")]
    CorruptData(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
