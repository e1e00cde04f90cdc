use thiserror::Error;

/// Every failure the core library can report.
///
/// The `Display` strings are stable: the CLI prints them verbatim and the
/// golden tests pin them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("TruncationMismatch: truncation orders {left} and {right} differ")]
    TruncationMismatch { left: usize, right: usize },
    #[error("NotReal: series has a nonzero imaginary coefficient")]
    NotReal,
    #[error("NotUnit: series has vanishing constant term")]
    NotUnit,
    #[error("BadLeadingTerm: constant term must be 1")]
    BadLeadingTerm,
    #[error("SignatureMismatch: {0}")]
    SignatureMismatch(String),
    #[error("DimensionMismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("InvalidWeights: certificate weight {0} is not positive")]
    InvalidWeights(String),
    #[error("PositivityRefuted: omega({witness}) has negative or non-real value {value}")]
    PositivityRefuted { witness: String, value: String },
    #[error("PrecisionExhausted: {0}")]
    PrecisionExhausted(String),
    #[error("NotCyclic: candidate vectors span rank {rank} of {dim}")]
    NotCyclic { rank: usize, dim: usize },
    #[error("RankMismatch: {0}")]
    RankMismatch(String),
    #[error("NotHermitian: entry ({row}, {col}) differs from the conjugate of its transpose")]
    NotHermitian { row: usize, col: usize },
    #[error("AlgebraMismatch: {0}")]
    AlgebraMismatch(String),
    #[error("NonFreeQuotient: {0}")]
    NonFreeQuotient(String),
    #[error("DefectNotSmall: P0*P0 - P0 has a nonzero classical part")]
    DefectNotSmall,
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("SyntaxError at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("UnknownVariable: {0}")]
    UnknownVariable(String),
    #[error("MixedChart: {0}")]
    MixedChart(String),
    #[error("SchemaError at {pointer}: {message}")]
    Schema { pointer: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short stable name of the variant, used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::TruncationMismatch { .. } => "TruncationMismatch",
            Error::NotReal => "NotReal",
            Error::NotUnit => "NotUnit",
            Error::BadLeadingTerm => "BadLeadingTerm",
            Error::SignatureMismatch(_) => "SignatureMismatch",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidWeights(_) => "InvalidWeights",
            Error::PositivityRefuted { .. } => "PositivityRefuted",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::NotCyclic { .. } => "NotCyclic",
            Error::RankMismatch(_) => "RankMismatch",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::AlgebraMismatch(_) => "AlgebraMismatch",
            Error::NonFreeQuotient(_) => "NonFreeQuotient",
            Error::DefectNotSmall => "DefectNotSmall",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::MixedChart(_) => "MixedChart",
            Error::Schema { .. } => "SchemaError",
        }
    }

    pub(crate) fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema { pointer: pointer.into(), message: message.into() }
    }
}
