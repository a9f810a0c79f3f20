use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("index {index} out of range for {what}")]
    OutOfRange { what: &'static str, index: i64 },

    #[error("morphism shapes do not compose: {0}")]
    Shape(String),

    #[error("representation violates the relations: {0}")]
    MalformedRep(String),

    #[error("object is not in {m}-mod: cohomology in degree {degree}")]
    NotInWindow { m: usize, degree: i32 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("knitting invariant violated: {0}")]
    KnitInvariant(String),

    #[error("covering construction failed: {0}")]
    Covering(String),

    #[error("refused: {0}")]
    Refused(String),

    #[error("could not parse object literal: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
