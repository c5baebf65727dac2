//! Command implementations behind the `seqrank` binary. Each command takes
//! file contents and returns the text to print with the exit status, so the
//! binary only does I/O.

pub mod commands;
pub mod input;
pub mod walks;

use seqrank::RankStatus;

pub use commands::{cmd_genfun, cmd_rank, cmd_recover, cmd_verify, Outcome, RankKindArg};
pub use walks::cmd_walks;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] seqrank::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NOT_SIMPLE: i32 = 2;
pub const EXIT_NO_FINITE_RANK: i32 = 3;
pub const EXIT_NON_INTEGER: i32 = 4;
pub const EXIT_DISAGREE: i32 = 5;

pub fn exit_code(status: RankStatus) -> i32 {
    match status {
        RankStatus::Certified => EXIT_OK,
        RankStatus::ErrorNotSimple => EXIT_NOT_SIMPLE,
        RankStatus::NoFiniteRankWithinPrefix => EXIT_NO_FINITE_RANK,
        RankStatus::NonIntegerMasses => EXIT_NON_INTEGER,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(seqrank::Error::RankFailed(s)) => exit_code(*s),
            CliError::Core(seqrank::Error::UnitaryPathsDisagree(_)) => EXIT_DISAGREE,
            _ => EXIT_INPUT,
        }
    }
}
