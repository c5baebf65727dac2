use thiserror::Error;

use crate::ranks::RankStatus;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("prefix too short: need {needed} terms, have {have}")]
    PrefixTooShort { needed: usize, have: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("index convention: expected start index {expected}, got {got}")]
    IndexConvention { expected: usize, got: usize },
    #[error("no recurrence generator within the supplied prefix")]
    NoGeneratorWithinPrefix,
    #[error("root finding did not converge: {0}")]
    RootFindingFailed(String),
    #[error("not a Gramian sequence: {0}")]
    NotGramian(String),
    #[error("rank computation ended with status {0}")]
    RankFailed(RankStatus),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("exact and Newton unitary-rank paths disagree: {0}")]
    UnitaryPathsDisagree(String),
    #[error("parse error: {0}")]
    Parse(String),
}
