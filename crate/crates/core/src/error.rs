use thiserror::Error;

pub type Result<T, E = LingamError> = std::result::Result<T, E>;

/// Every failure the estimators, generators and file loaders can report.
///
/// Variable subscripts carried by variants are zero-based.
#[derive(Debug, Error)]
pub enum LingamError {
    #[error("row {0} has zero sample variance")]
    ZeroVarianceRow(usize),
    #[error("regressor has zero sample variance")]
    ZeroVariance,
    #[error("dimension error: {0}")]
    DimensionError(String),
    #[error("non-finite value at row {row}, column {column}")]
    NonFiniteValue { row: usize, column: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("design matrix is numerically singular (reciprocal condition {rcond:e})")]
    SingularDesign { rcond: f64 },
    #[error("{predictors} predictors but only {observations} observations")]
    TooFewObservations { predictors: usize, observations: usize },
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("variable {0} is not in the active set")]
    NotInActiveSet(usize),
    #[error("covariance matrix is rank deficient (p = {p}, n = {n})")]
    RankDeficient { p: usize, n: usize },
    #[error("every row permutation places a zero on the diagonal")]
    NoFeasibleAssignment,
    #[error("diagonal entry {0} is zero")]
    ZeroDiagonal(usize),
    #[error("{singular} singular bootstrap resamples exhausted the retry cap")]
    TooManySingularResamples { singular: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("CSV parse error at line {line}, column {column}: {message}")]
    ParseError { line: u64, column: usize, message: String },
    #[error("ragged rows: line {line} has {found} fields, expected {expected}")]
    RaggedRows { line: u64, expected: usize, found: usize },
    #[error("non-numeric cell {value:?} at line {line}, column {column}")]
    NonNumericCell { line: u64, column: usize, value: String },
    #[error("unsupported schema version {found} (supported major version {supported})")]
    SchemaVersion { found: String, supported: u32 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl LingamError {
    /// Stable machine-readable code, used as the CLI error prefix.
    pub fn code(&self) -> &'static str {
        match self {
            LingamError::ZeroVarianceRow(_) => "ZERO_VARIANCE_ROW",
            LingamError::ZeroVariance => "ZERO_VARIANCE",
            LingamError::DimensionError(_) => "DIMENSION_ERROR",
            LingamError::NonFiniteValue { .. } => "NON_FINITE_VALUE",
            LingamError::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            LingamError::SingularDesign { .. } => "SINGULAR_DESIGN",
            LingamError::TooFewObservations { .. } => "TOO_FEW_OBSERVATIONS",
            LingamError::InvalidPermutation(_) => "INVALID_PERMUTATION",
            LingamError::NotInActiveSet(_) => "NOT_IN_ACTIVE_SET",
            LingamError::RankDeficient { .. } => "RANK_DEFICIENT",
            LingamError::NoFeasibleAssignment => "NO_FEASIBLE_ASSIGNMENT",
            LingamError::ZeroDiagonal(_) => "ZERO_DIAGONAL",
            LingamError::TooManySingularResamples { .. } => "TOO_MANY_SINGULAR_RESAMPLES",
            LingamError::InvalidConfig(_) => "INVALID_CONFIG",
            LingamError::ParseError { .. } => "PARSE_ERROR",
            LingamError::RaggedRows { .. } => "RAGGED_ROWS",
            LingamError::NonNumericCell { .. } => "NON_NUMERIC_CELL",
            LingamError::SchemaVersion { .. } => "SCHEMA_VERSION",
            LingamError::Io(_) => "IO_ERROR",
            LingamError::Json(_) => "JSON_ERROR",
        }
    }
}
