use std::fmt;

use thiserror::Error;

/// Position-annotated failure from one of the text grammars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (at byte {})", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("empty set: {0}")]
    EmptySet(String),
    #[error("divisor set contains zero")]
    DivisorContainsZero,
    #[error("even root of a set with negative elements")]
    NegativeUnderEvenRoot,
    #[error("undefined division: {reason}")]
    UndefinedDivision { reason: String },
    #[error("no real root exists")]
    NoRealRoot,
    #[error("no real solution found (best residual {residual:e})")]
    NoRealSolution { residual: f64 },
    #[error("need at least {needed} observations, got {got}")]
    TooFewObservations { needed: usize, got: usize },
    #[error("frequency table has no rows with a positive frequency")]
    EmptyTable,
    #[error("negative frequency in row {row}")]
    NegativeFrequency { row: String },
    #[error("invalid number of wrong observations k={k} for n={n}")]
    BadK { k: usize, n: usize },
    #[error("invalid weights: {0}")]
    BadWeights(String),
    #[error("x={x} is outside 0..={n}")]
    XOutOfRange { x: u32, n: u32 },
    #[error("cannot normalize a triplet whose components sum to zero")]
    ZeroTotal,
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("composition {alpha}+{beta}+{gamma} does not sum to n={n}")]
    BadComposition { alpha: u32, beta: u32, gamma: u32, n: u32 },
    #[error("invalid outcome counts: {0}")]
    BadCounts(String),
    #[error("slope denominator contains zero (x values are degenerate)")]
    DegenerateX,
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("variance term contains zero or negative values")]
    DegenerateVariance,
    #[error("chosen point {value} is outside {set}")]
    PointOutsideSet { value: f64, set: String },
    #[error("no tabulated critical value for {0}")]
    UnknownLevel(String),
    #[error("degrees of freedom {0} not covered by the t table")]
    DfOutOfTable(u32),
    #[error("sample size must exceed 30 (min n = {0})")]
    SmallSample(f64),
    #[error("spread must be positive (min = {0})")]
    BadSpread(f64),
    #[error("invalid sample size: {0}")]
    BadN(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("error bound must be positive, got {0}")]
    BadBound(f64),
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("invalid range lo={lo} hi={hi}")]
    BadRange { lo: i64, hi: i64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable variant name, used by the CLI in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::EmptySet(_) => "EmptySet",
            Error::DivisorContainsZero => "DivisorContainsZero",
            Error::NegativeUnderEvenRoot => "NegativeUnderEvenRoot",
            Error::UndefinedDivision { .. } => "UndefinedDivision",
            Error::NoRealRoot => "NoRealRoot",
            Error::NoRealSolution { .. } => "NoRealSolution",
            Error::TooFewObservations { .. } => "TooFewObservations",
            Error::EmptyTable => "EmptyTable",
            Error::NegativeFrequency { .. } => "NegativeFrequency",
            Error::BadK { .. } => "BadK",
            Error::BadWeights(_) => "BadWeights",
            Error::XOutOfRange { .. } => "XOutOfRange",
            Error::ZeroTotal => "ZeroTotal",
            Error::OutOfRange(_) => "OutOfRange",
            Error::BadComposition { .. } => "BadComposition",
            Error::BadCounts(_) => "BadCounts",
            Error::DegenerateX => "DegenerateX",
            Error::TooFewPoints(_) => "TooFewPoints",
            Error::DegenerateVariance => "DegenerateVariance",
            Error::PointOutsideSet { .. } => "PointOutsideSet",
            Error::UnknownLevel(_) => "UnknownLevel",
            Error::DfOutOfTable(_) => "DfOutOfTable",
            Error::SmallSample(_) => "SmallSample",
            Error::BadSpread(_) => "BadSpread",
            Error::BadN(_) => "BadN",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::BadBound(_) => "BadBound",
            Error::EmptyAlphabet => "EmptyAlphabet",
            Error::BadRange { .. } => "BadRange",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
