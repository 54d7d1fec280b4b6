use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in distinct variable contexts")]
    ContextMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable index {0} out of range")]
    VariableIndex(usize),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid generalized Cartan matrix: {0}")]
    Axiom(String),
    #[error("matrix is decomposable")]
    Decomposable,
    #[error("matrix is singular; use the affine basis (h_1..h_l, K, d) instead")]
    Singular,
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("degree of variable {var} is ambiguous under restriction {restriction}: the central parameter depends on it")]
    Ambiguous { restriction: String, var: String },
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
