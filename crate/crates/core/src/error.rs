use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("malformed word: {0}")]
    MalformedWord(String),

    #[error("malformed family: {0}")]
    MalformedFamily(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An enumeration would exceed its configured cap. Nothing is sampled.
    #[error("enumeration refused: {required} cases required, cap is {cap}")]
    CapExceeded { required: u128, cap: u128 },

    #[error("cannot decode witness: {0}")]
    Decode(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
