use thiserror::Error;

/// Errors produced while building, transforming, solving or serializing
/// disclosure problems.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("secret {index} has non-positive mass {value}")]
    NonPositiveMass { index: usize, value: f64 },
    #[error("secret masses sum to {sum}, expected 1")]
    MassNotNormalized { sum: f64 },
    #[error("P(Y=1|S) of secret {index} is {value}, outside [0, 1]")]
    ConditionalOutOfRange { index: usize, value: f64 },
    #[error("at least two secrets are required, got {0}")]
    TooFewSecrets(usize),
    #[error("invalid information structure: {0}")]
    InvalidStructure(String),
    #[error("invalid mechanism: {0}")]
    InvalidMechanism(String),
    #[error("secret {secret} has a degenerate P(Y=1|S) inconsistent with its cells")]
    DegenerateConditional { secret: usize },
    #[error("bad split weights: {0}")]
    BadWeights(String),
    #[error("unknown signal {0}")]
    UnknownSignal(String),
    #[error("unknown secret {0}")]
    UnknownSecret(String),
    #[error("signals {first} and {second} have different posteriors")]
    NotEquivalentSignals { first: String, second: String },
    #[error("context (secret {secret}, Y={state}) has zero prior mass")]
    ZeroMassContext { secret: usize, state: u8 },
    #[error("posterior means differ: {left} vs {right}")]
    MeanMismatch { left: f64, right: f64 },
    #[error("expected a binary secret, got {0} secrets")]
    NotBinarySecret(usize),
    #[error("privacy budget must be finite and non-negative, got {0}")]
    InvalidEpsilon(f64),
    #[error("no cut assignment yields a feasible program")]
    NoFeasibleAssignment,
    #[error("{n} secrets exceeds the cap of {cap}; pass an override to proceed")]
    TooManySecrets { n: usize, cap: usize },
    #[error("naive enumeration supports {supported} secrets only, got {n}")]
    UnsupportedSize { n: usize, supported: usize },
    #[error("bad utility specification: {0}")]
    BadUtilitySpec(String),
    #[error("bad grid specification: {0}")]
    BadGrid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPositiveMass { .. } => "NonPositiveMass",
            Error::MassNotNormalized { .. } => "MassNotNormalized",
            Error::ConditionalOutOfRange { .. } => "ConditionalOutOfRange",
            Error::TooFewSecrets(_) => "TooFewSecrets",
            Error::InvalidStructure(_) => "InvalidStructure",
            Error::InvalidMechanism(_) => "InvalidMechanism",
            Error::DegenerateConditional { .. } => "DegenerateConditional",
            Error::BadWeights(_) => "BadWeights",
            Error::UnknownSignal(_) => "UnknownSignal",
            Error::UnknownSecret(_) => "UnknownSecret",
            Error::NotEquivalentSignals { .. } => "NotEquivalentSignals",
            Error::ZeroMassContext { .. } => "ZeroMassContext",
            Error::MeanMismatch { .. } => "MeanMismatch",
            Error::NotBinarySecret(_) => "NotBinarySecret",
            Error::InvalidEpsilon(_) => "InvalidEpsilon",
            Error::NoFeasibleAssignment => "NoFeasibleAssignment",
            Error::TooManySecrets { .. } => "TooManySecrets",
            Error::UnsupportedSize { .. } => "UnsupportedSize",
            Error::BadUtilitySpec(_) => "BadUtilitySpec",
            Error::BadGrid(_) => "BadGrid",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
