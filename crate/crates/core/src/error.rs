use thiserror::Error;

/// Errors raised by the library. Verdict-style outcomes (validation,
/// certification, containment sampling) are reported as values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid union spec: {0}")]
    InvalidSpec(String),

    #[error("wrong case: {0}")]
    WrongCase(String),

    #[error("component {0} has no predecessor")]
    NoPredecessor(usize),

    #[error("interpolation failed: {0}")]
    Interpolation(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("operation requires an exact limit series")]
    ExactnessRequired,

    #[error("degenerate series: {0}")]
    DegenerateSeries(String),

    #[error("empty stratum at index {0}: V_i is covered by its boundary subspaces")]
    EmptyStratum(usize),

    #[error("cannot generate series: {0}")]
    Generation(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("out of scope: {0}")]
    Scope(String),

    #[error("point is not generic: {0}")]
    Genericity(String),

    #[error("point does not lie on component {0}")]
    NotOnComponent(usize),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
