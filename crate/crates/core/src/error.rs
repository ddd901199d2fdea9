use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ambient mismatch: expected {expected} variables, got {found}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("constant monomial is not a valid ideal generator")]
    InvalidGenerator,

    #[error("socle set is empty")]
    EmptySocle,

    #[error("ideal is not Artinian (quotient is infinite dimensional)")]
    NotArtinian,

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("degree {degree} out of range (valid: {min}..={max})")]
    DegreeOutOfRange { degree: usize, min: usize, max: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("gave up after {0} attempts")]
    NonTermination(u64),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
