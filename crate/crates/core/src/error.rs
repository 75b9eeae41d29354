use thiserror::Error;

use crate::exactpoly::PolyError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid Lie algebra: {0}")]
    Algebra(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("symbol '{0}' already occurs in the operand")]
    SymbolCollision(String),
    #[error("expected constant coefficients, found {0}")]
    NonConstant(String),
    #[error("matrix has parameter entries; use the minor identities instead")]
    Parametric,
    #[error("invalid automorphism: {0}")]
    Automorphism(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
