use thiserror::Error;

/// Everything that can go wrong between loading a series and writing a report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // data
    #[error("non-positive value {value} at year {year} in a log-fit series")]
    NonPositiveValue { year: f64, value: f64 },
    #[error("duplicate year {0}")]
    DuplicateYear(f64),
    #[error("unit mismatch: expected {expected}, found {found}")]
    UnitMismatch { expected: String, found: String },
    #[error("series is empty")]
    EmptySeries,
    #[error("malformed series input at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("dataset `{0}` not found")]
    DatasetMissing(String),
    #[error("year {0} is not covered by the series")]
    YearNotCovered(f64),

    // config
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    // numeric / model
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("polynomial degree must be at least 1")]
    DegreeZero,
    #[error("negative demand {0} TWh/yr")]
    NegativeDemand(f64),
    #[error("negative power {0} GW")]
    NegativePower(f64),
    #[error("negative area {0} km2")]
    NegativeArea(f64),
    #[error("capacity factor {0} outside (0, 1]")]
    CapacityFactorOutOfRange(f64),
    #[error("installation density must be positive, got {0}")]
    NonPositiveDensity(f64),
    #[error("growth rate {0} is not positive")]
    NonGrowingSeries(f64),
    #[error("year {year} precedes the fit window starting at {window_start}")]
    YearBeforeWindow { year: f64, window_start: f64 },
    #[error("combination needs at least one technology")]
    EmptyCombination,
    #[error("projection decreases between {from} and {to}")]
    NonMonotoneProjection { from: f64, to: f64 },
    #[error("growth rates are equal; generation curves never cross")]
    ParallelGrowth,
    #[error("learning-curve lines are parallel or meet outside the representable range")]
    ParallelLines,
    #[error("cost rises with scale (slope {0})")]
    PositiveSlope(f64),
    #[error("x must be positive, got {0}")]
    NonPositiveX(f64),
    #[error("model for `{0}` is not a single exponential")]
    NotExponential(String),
    #[error("unknown figure `{id}`; valid ids: {valid}")]
    MissingFit { id: String, valid: String },
    #[error("unknown technology `{0}`")]
    UnknownTechnology(String),
    #[error("unknown threshold `{0}`")]
    UnknownThreshold(String),
    #[error("i/o error: {0}")]
    Io(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    Data,
    Model,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            ConfigInvalid(_) | UnknownTechnology(_) | UnknownThreshold(_) | MissingFit { .. } => {
                ErrorClass::Config
            }
            NonPositiveValue { .. }
            | DuplicateYear(_)
            | UnitMismatch { .. }
            | EmptySeries
            | Parse { .. }
            | UnknownConstant(_)
            | DatasetMissing(_)
            | YearNotCovered(_)
            | Io(_) => ErrorClass::Data,
            _ => ErrorClass::Model,
        }
    }

    /// 2 config error, 3 data error, 4 numeric/model error.
    pub fn exit_code(&self) -> i32 {
        match self.class() {
            ErrorClass::Config => 2,
            ErrorClass::Data => 3,
            ErrorClass::Model => 4,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
