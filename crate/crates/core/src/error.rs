use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The request is well-formed but lies outside what the theorems cover.
    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("t-syllable t^{exponent} is not a multiple of t^{period}")]
    NonEliminable { exponent: String, period: i64 },

    #[error("unknown element {0:?} in this presentation")]
    UnknownElement(String),

    #[error("script {script}: {source}")]
    Script {
        script: String,
        #[source]
        source: StepError,
    },

    #[error("script template: {0}")]
    Template(String),
}

/// Failure of a single derivation step, or of the script framing around it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("step {index}: {reason}")]
    AtStep { index: usize, reason: String },

    #[error("axiom: {0}")]
    Axiom(String),

    #[error("claimed result does not match the derivation: {0}")]
    ClaimMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
