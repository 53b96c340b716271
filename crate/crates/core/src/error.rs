use thiserror::Error;

/// Failures of prototype construction and class arithmetic.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ProtoError {
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("argument of exp is not purely infinite")]
    NotPurelyInfinite,
    #[error("argument of exp has a non-positive leading coefficient")]
    NonPositiveLeading,
    #[error("cardinal-jump atoms only support products and powers: {0}")]
    TowerArithmetic(&'static str),
    #[error("feedback rule precondition violated: {0}")]
    FeedbackConditionViolated(String),
    #[error("infinite part of {0} has no finite representation")]
    NotRepresentable(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar is not a finite real number")]
    NonFiniteScalar,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("sequence is oscillatory: {0}")]
    Oscillatory(String),
    #[error("limit is undefined: {0}")]
    Undefined(String),
}

impl From<ProtoError> for EngineError {
    fn from(e: ProtoError) -> Self {
        EngineError::Undefined(e.to_string())
    }
}

impl From<AlgebraError> for EngineError {
    fn from(e: AlgebraError) -> Self {
        EngineError::Undefined(e.to_string())
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("cardinal-jump atoms cannot be evaluated at a finite index")]
    TowerAtomNotEvaluable,
    #[error("domain error at n = {at}: {what}")]
    DomainError { at: String, what: String },
    #[error("no candidate prototype gives a stable ratio (best drift {best_drift:.3e})")]
    NoStableCandidate { best_drift: f64 },
    #[error("need at least {needed} samples with strictly increasing n, got {got}")]
    BadSamples { needed: usize, got: usize },
    #[error("sample input: {0}")]
    Ingest(String),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("parse error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("'{symbol}' is not allowed in a {context} expression (offset {pos})")]
    Context { pos: usize, symbol: char, context: &'static str },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::Context { pos, .. } => *pos,
        }
    }
}

/// Failures turning user text into a value or prototype.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum InputError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Proto(#[from] ProtoError),
    #[error("{0} is not a prototype (expected a single term with coefficient 1)")]
    NotAPrototype(String),
}

impl From<AlgebraError> for InputError {
    fn from(e: AlgebraError) -> Self {
        InputError::Proto(ProtoError::Algebra(e))
    }
}
