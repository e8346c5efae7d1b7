use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("redex mismatch at step {step}: rule `{rule}` does not apply at position {position}")]
    RedexMismatch {
        step: usize,
        rule: String,
        position: usize,
    },
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("unknown 3-cell `{0}`")]
    UnknownCell(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("multiplication table is not associative: {0}")]
    TableNotAssociative(String),
    #[error("multiplication table has no unit")]
    NoUnit,
    #[error("invalid order specification: {0}")]
    InvalidOrderSpec(String),
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("normalization exceeded the budget of {0} steps")]
    StepBudgetExceeded(usize),
    #[error("cannot orient `{left}` against `{right}`")]
    OrientationFailure { left: String, right: String },
    #[error("completion exceeded the budget of {0} steps")]
    BudgetExceeded(usize),
    #[error("critical branching does not join: {0}")]
    NotLocallyConfluent(String),
    #[error("sides are not parallel: {0}")]
    NotParallel(String),
    #[error("invalid sphere move: {0}")]
    InvalidMove(String),
    #[error("not collapsible: {0}")]
    NotCollapsible(String),
    #[error("substitution out of scope: {0}")]
    SubstitutionOutOfScope(String),
    #[error("`{f}` does not left-divide `{g}`")]
    NotADivisor { f: String, g: String },
    #[error("normalization failure: {0}")]
    NormalizationFailure(String),
    #[error("unclassified branching: {0}")]
    UnclassifiedBranching(String),
    #[error("ambiguous classification: {0}")]
    AmbiguousClassification(String),
    #[error("sphere check failed: {0}")]
    SphereCheckFailed(String),
    #[error("reduction does not match Gar3: {0}")]
    MismatchWithGar3(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
