use thiserror::Error;

/// Errors raised by algebra, automaton and learning operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("operation `{op}` requires {expected} algebra")]
    WrongAlgebraKind { op: &'static str, expected: &'static str },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("letter `{0}` is not in the algebra domain")]
    InvalidLetter(String),

    #[error("invalid predicate: {0}")]
    InvalidPredicate(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("`{op}` requires a {flag} input")]
    Precondition { op: &'static str, flag: &'static str },

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("inconsistent sample: word `{0}` carries both labels")]
    InconsistentSample(String),

    #[error("empty sample")]
    EmptySample,

    #[error("state `{0}` is unreachable from the initial state")]
    UnreachableState(String),

    #[error("states `{0}` and `{1}` are indistinguishable")]
    Indistinguishable(String, String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("oracle inconsistency: {0}")]
    OracleInconsistent(String),

    #[error("query budget of {0} exhausted")]
    QueryBudget(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
