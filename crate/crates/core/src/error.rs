use thiserror::Error;

/// Errors raised by the engine and the domain-file front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `position` is a 1-based character column; `line` is set for domain files.
    #[error("syntax error at {}: {message}", location(*line, *position))]
    Syntax { line: Option<usize>, position: usize, message: String },
    #[error("time index {index} out of range for a {length}-history")]
    Index { index: usize, length: usize },
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("undeclared name `{0}`")]
    UndeclaredName(String),
    #[error("effect precondition for ({action}, {proposition}) is not propositional: {formula}")]
    NonPropositionalEffect { action: String, proposition: String, formula: String },
    #[error("morality {morality} outside allowed range {min}..{max}")]
    MoralityOutOfRange { morality: usize, min: usize, max: usize },
    #[error("moral problems do not share the same action theory and initial state")]
    MismatchedContext,
    #[error("union of the value base differs from the problem's value set")]
    BaseMismatch,
    #[error("universe of {size} propositions exceeds the limit of {limit}")]
    UniverseTooLarge { size: usize, limit: usize },
    #[error("invalid domain: {0}")]
    Invalid(String),
}

fn location(line: Option<usize>, position: usize) -> String {
    match line {
        Some(line) => format!("line {line}, column {position}"),
        None => format!("offset {position}"),
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
