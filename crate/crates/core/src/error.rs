use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("form degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: u32, right: u32 },

    #[error(
        "Euler class integrality failure: lifted relator is {residual:e} away from a multiple of pi"
    )]
    Integrality { residual: f64 },

    #[error("representation is not Fuchsian: |euler| = {euler}, expected {expected}")]
    NotFuchsian { euler: i64, expected: i64 },

    #[error("malformed representation file: {0}")]
    Format(#[from] serde_json::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
