//! Library half of the `boxtimes` binary: typed file formats, family
//! parsing (including the CLI-only random k-tree family), algorithm
//! dispatch, bundle verification and size sweeps. The binary in
//! `main.rs` is a thin argument layer over these.

pub mod family;
pub mod io;
pub mod run;
pub mod sweep;
pub mod verify;

/// Errors split by exit code: bad input exits 2, a violated bound or
/// missing witness exits 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Violation(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Violation(_) => 1,
        }
    }
}
