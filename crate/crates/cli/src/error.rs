use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse: {0}")]
    Parse(String),
    #[error("io: {0}")]
    Io(String),
    #[error("{}: {}", .0.kind(), strip_kind(.0))]
    Core(#[from] mscs_core::Error),
}

fn strip_kind(e: &mscs_core::Error) -> String {
    let text = e.to_string();
    match text.split_once(": ") {
        Some((_, rest)) => rest.to_string(),
        None => text,
    }
}

impl CliError {
    /// Process exit status: every error here is a usage or input problem.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
