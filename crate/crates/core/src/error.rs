use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("polynomial is not homogeneous: term {term} has degree {found}, expected {expected}")]
    NotHomogeneous {
        term: usize,
        found: u32,
        expected: u32,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The explicit rank computation disagrees with the generic Hilbert function.
    /// Either the polynomial is singular or the prime is unlucky; one prime cannot tell which.
    #[error("singular or unlucky prime: dim R_{degree} computed as {computed}, generic value {expected}")]
    HilbertMismatch {
        degree: usize,
        computed: u64,
        expected: u64,
        dims: Vec<u64>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
