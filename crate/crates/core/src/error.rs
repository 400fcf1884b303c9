use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("exponent vectors of different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("colon by the zero ideal")]
    ZeroColonDivisor,
    #[error("quotient is not finite-dimensional over the coefficient field")]
    NotArtinian,
    #[error("variables {0:?} are not independent modulo the prime")]
    NotIndependent(Vec<String>),
    #[error("module is not Artinian after inverting {0:?}")]
    NotArtinianAfterLocalization(Vec<String>),
    #[error("entry `{0}` has a nonzero constant term but is not constant")]
    MinimizationOutsideOrigin(String),
    #[error("the unit ideal has no grade")]
    UnitIdeal,
    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("row and column selections have different lengths ({0} vs {1})")]
    NonSquareSelection(usize, usize),
    #[error("bad minor size {q} for a {rows}x{cols} matrix")]
    BadSize { q: usize, rows: usize, cols: usize },
    #[error("parameter out of range: {0}")]
    BadRange(String),
    #[error("no square selection of columns has a regular determinant")]
    NoRegularSquareMinor,
    #[error("no primitive element found after {0} attempts")]
    NoPrimitiveFound(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("denominator `{0}` is a zerodivisor on the quotient ring")]
    IrregularDenominator(String),
    #[error("powers did not stabilize within {0} steps")]
    NoStabilization(usize),
    #[error("search budget of {0} draws exhausted")]
    BudgetExhausted(usize),
    #[error("no principal generator found within {0} candidates")]
    NoPrincipalGenerator(usize),
    #[error("regularity certification failed: {0}")]
    RegularityCertificationFailed(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
