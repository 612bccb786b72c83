use thiserror::Error;

/// Errors raised by the algebra, polynomial, root and dynamics routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("algebra parameters do not match")]
    ParamsMismatch,
    #[error("unsupported degree {degree} in exact mode (maximum {max})")]
    UnsupportedDegree { degree: usize, max: usize },
    #[error("root solver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("element is not invertible (zero norm)")]
    NotInvertible,
    #[error("elements are not conjugate: {0}")]
    NotConjugate(String),
    #[error("no invertible conjugating element found: {0}")]
    WitnessFailure(String),
    #[error("both elements are central, no quaternion subalgebra is determined")]
    DegenerateCommutative,
    #[error("internal arithmetic error: {0}")]
    Internal(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("element does not lie in the right-multiple root set")]
    NotInRmr,
    #[error("E vanishes on this class, every member is a root")]
    WholeClass,
    #[error("not a fixed point: |f(alpha) - alpha| = {residual:e}")]
    NotAFixedPoint { residual: f64 },
    #[error("pseudo-period mismatch: expected order {expected}, found {found:?}")]
    OrderMismatch { expected: usize, found: Option<usize> },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
