use thiserror::Error;

use crate::model::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid decision tree: {}", format_violations(.0))]
    InvalidTree(Vec<Violation>),

    #[error("unknown stage-1 state `{0}`")]
    UnknownFirstState(String),

    #[error("unknown stage-2 state `{0}`")]
    UnknownSecondState(String),

    #[error("state `{state}` has no alternative {alternative}")]
    UnknownAlternative { state: String, alternative: String },

    #[error("strategy space too large: {count} strategies exceed the cap of {cap}")]
    StrategySpaceTooLarge { count: u128, cap: usize },

    #[error("strategy index {index} out of range for {count} strategies")]
    StrategyIndexOutOfRange { index: usize, count: usize },

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("payoff row is empty")]
    EmptyRow,

    #[error("payoff matrix has no strategies or no states")]
    EmptyMatrix,

    #[error("λ = {0} lies outside [0, 1]")]
    LambdaOutOfRange(String),

    #[error("grid step {0} must lie in (0, 1]")]
    StepOutOfRange(String),

    #[error("tree has no {0} probabilities; simulation needs both stages")]
    MissingProbabilities(&'static str),

    #[error("decision-relevant stage-1 states have zero total probability")]
    NoDecisionMass,

    #[error("record count must be at least 1")]
    EmptySimulation,

    #[error("observation {index}: {message}")]
    BadRecord { index: usize, message: String },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
