use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
///
/// Property violations of a *user-supplied* structure are usually returned as
/// report data rather than as errors. `TheoremViolation` is reserved for
/// identities that hold for every valid input; seeing it means a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("closure exceeded the element cap of {cap}")]
    ClosureBudgetExceeded { cap: usize },
    #[error("construction exceeded the size budget of {cap}")]
    SizeBudgetExceeded { cap: usize },
    #[error("elements {0} and {1} are not compatible")]
    NotCompatible(usize, usize),
    #[error("no join of {a} and {b}; minimal upper bounds {upper_bounds:?}")]
    NoJoin {
        a: usize,
        b: usize,
        upper_bounds: Vec<usize>,
    },
    #[error("element {0} is not below {1}")]
    NotBelow(usize, usize),
    #[error("map is not a zero-preserving homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("partition is not a congruence: {0}")]
    NotCongruence(String),
    #[error("graph has a cycle through vertex {0}")]
    GraphHasCycle(String),
    #[error("bad vector: {0}")]
    BadVector(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("input is not a Boolean inverse semigroup: {0}")]
    NotBoolean(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("isomorphism check failed: {0}")]
    IsoFailure(String),
    #[error("theorem check `{check}` failed: {witness}")]
    TheoremViolation { check: &'static str, witness: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn violation(check: &'static str, witness: impl Into<String>) -> Error {
    Error::TheoremViolation {
        check,
        witness: witness.into(),
    }
}
