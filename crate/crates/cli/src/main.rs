mod commands;
mod config;
mod output;
mod scramble;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

/// Exit status when a requested check fails.
pub const EXIT_FAIL: u8 = 1;
/// Exit status for malformed invocations and unreadable input.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, kind: "usage", message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self { code: EXIT_FAIL, kind: "internal", message: message.into() }
    }
}

impl From<qzero::Error> for CliError {
    fn from(e: qzero::Error) -> Self {
        use qzero::Error as E;
        let (code, kind) = match &e {
            E::NotARepresentation { .. } => (EXIT_FAIL, "not-a-representation"),
            E::Indeterminate { .. } => (EXIT_FAIL, "indeterminate"),
            E::DegenerateAnchor { .. } => (EXIT_FAIL, "degenerate-anchor"),
            E::NonNormalOperator { .. } => (EXIT_FAIL, "non-normal-operator"),
            E::CapacityExceeded { .. } => (EXIT_USAGE, "capacity-exceeded"),
            E::InvalidDimension { .. } => (EXIT_USAGE, "invalid-dimension"),
            E::InvalidEntry { .. } => (EXIT_USAGE, "invalid-entry"),
            E::EmptyInterior { .. } => (EXIT_USAGE, "empty-interior"),
            E::ShapeMismatch(_) => (EXIT_USAGE, "shape-mismatch"),
            E::InvalidPhase { .. } => (EXIT_USAGE, "invalid-phase"),
            E::InvalidParameter(_) => (EXIT_USAGE, "invalid-parameter"),
            E::InvalidWord(_) => (EXIT_USAGE, "invalid-word"),
            E::IncompatibleRepresentations(_) => (EXIT_USAGE, "incompatible-representations"),
            E::Syntax { .. } => (EXIT_USAGE, "syntax"),
            E::IndexOutOfRange { .. } => (EXIT_USAGE, "index-out-of-range"),
            E::MalformedRepresentation(_) => (EXIT_USAGE, "malformed-representation"),
            E::Json(_) => (EXIT_USAGE, "json"),
        };
        Self { code, kind, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match config::Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", json!({ "error": "usage", "message": e.to_string().trim_end() }));
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("{}", json!({ "error": e.kind, "message": e.message }));
            ExitCode::from(e.code)
        }
    }
}
