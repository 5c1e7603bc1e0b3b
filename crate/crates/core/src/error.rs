use thiserror::Error;

use crate::acyclicity::CycleWitness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the universe must contain at least one element")]
    EmptyUniverse,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid label `{0}` (expected [A-Za-z0-9_]+)")]
    InvalidLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("element `{0}` is not in the universe")]
    UnknownElement(String),
    #[error("stratum {0} is empty")]
    EmptyStratum(usize),
    #[error("no value for element `{0}`")]
    MissingValue(String),
    #[error("no image for source element `{0}`")]
    MissingMapping(String),
    #[error("source element `{0}` is mapped more than once")]
    DuplicateMapping(String),
    #[error("relation is not strongly acyclic ({0})")]
    NotStronglyAcyclic(CycleWitness),
    #[error("relation is not a preorder")]
    NotPreorder,
    #[error("collection is not a pseudo-stratification of the relation")]
    NotPseudoStratification,
    #[error("pseudo-stratification is not separating")]
    NotSeparating,
    #[error("utility is not a Richter-Peleg representation ({0} violations)")]
    NotRepresentation(usize),
    #[error("universe of size {n} exceeds the limit {max} for this operation")]
    TooLarge { n: usize, max: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Errors where the input is well-formed but fails a mathematical
    /// precondition (as opposed to malformed input).
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::NotStronglyAcyclic(_)
                | Error::NotPreorder
                | Error::NotPseudoStratification
                | Error::NotSeparating
                | Error::NotRepresentation(_)
        )
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
