//! Library side of `einctl`: verification suites, the report runner and the
//! subcommand implementations.

pub mod commands;
pub mod render;
pub mod report;
pub mod suites;

pub use report::{parse_signatures, run_suite, Record, Report, Status, Suite, SuiteConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] ein_core::Error),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    /// 1 = bad input, 2 = domain or precondition violation, 3 = internal
    /// assertion (including failed verification checks).
    pub fn exit_code(&self) -> i32 {
        use ein_core::Error as E;
        match self {
            CliError::Input(_) => 1,
            CliError::ChecksFailed(_) => 3,
            CliError::Core(e) => match e {
                E::Parse(_) => 1,
                E::Internal(_) => 3,
                _ => 2,
            },
        }
    }
}
