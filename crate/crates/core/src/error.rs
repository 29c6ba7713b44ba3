use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown lattice `{0}` (expected P, D or G)")]
    UnknownLattice(String),

    #[error("invalid lattice spec: {0}")]
    InvalidLattice(String),

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("character component {index} has modulus {modulus}, expected 1")]
    NonUnitCharacter { index: usize, modulus: f64 },

    #[error("eigensolver did not converge on a {0}x{0} matrix")]
    EigenNonConvergence(usize),

    #[error("representation error: {0}")]
    Representation(String),

    #[error("parameters inconsistent with representation: {0}")]
    InconsistentParams(String),

    #[error("closure dimension {dim} exceeds ambient dimension {max}")]
    ClosureOverflow { dim: usize, max: usize },

    #[error("{0}")]
    Precondition(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
