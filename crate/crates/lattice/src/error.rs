use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is degenerate")]
    Degenerate,
    #[error("lattice is not negative definite")]
    NotNegativeDefinite,
    #[error("no root lattice of type {0}{1}")]
    InvalidRootType(char, usize),
    #[error("glue vector {name} is not in the dual lattice")]
    GlueNotInDual { name: String },
    #[error("glue vector {name} has odd or non-integral norm {norm}")]
    GlueNotEven { name: String, norm: String },
    #[error("glue vectors {a} and {b} have non-integral pairing {value}")]
    GluePairing { a: String, b: String, value: String },
    #[error("induced Gram matrix is not integral")]
    NonIntegral,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed lattice document: {0}")]
    Parse(String),
}
