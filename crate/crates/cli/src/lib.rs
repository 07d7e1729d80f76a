//! Command-line front end for `cubforge-core`: file formats, the command
//! dispatcher and the reproduction targets.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde_json::{json, Value};

mod args;
mod commands;
pub mod formats;
pub mod repro;

pub use args::Cli;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("data unavailable: {0}")]
    MissingData(String),
    #[error("{0}")]
    Core(cubforge_core::error::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl From<cubforge_core::error::Error> for CliError {
    fn from(e: cubforge_core::error::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    MissingData,
    Usage,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 2,
            Status::MissingData => 3,
            Status::Usage => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::MissingData => "missing-data",
            Status::Usage => "usage",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// The worse of two outcomes.
    pub fn and(self, other: Status) -> Status {
        let rank = |s: Status| match s {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::MissingData => 2,
            Status::Usage => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    /// Human-readable report.
    pub report: String,
    /// Machine-readable result object.
    pub payload: Value,
}

impl CommandResult {
    pub fn new(status: Status, report: impl Into<String>, details: Value) -> Self {
        CommandResult { status, report: report.into(), payload: details }
    }

    fn error(e: &CliError) -> Self {
        let status = match e {
            CliError::Usage(_) | CliError::Parse(_) => Status::Usage,
            CliError::MissingData(_) | CliError::Io { .. } => Status::MissingData,
            CliError::Core(_) => Status::Fail,
        };
        CommandResult::new(status, format!("error: {e}\n"), json!({ "error": e.to_string() }))
    }

    /// Output of `--json`: one object with a fixed top-level shape.
    pub fn json(&self, command: &str) -> Value {
        json!({ "command": command, "status": self.status.name(), "details": self.payload })
    }
}

/// Where catalog data files (`e8_regions.txt`) are looked up: `--data-dir`,
/// then `CUBFORGE_DATA`, then `./data`, then the source tree's `data/`.
pub fn data_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os("CUBFORGE_DATA") {
        return PathBuf::from(p);
    }
    let local = PathBuf::from("data");
    if local.is_dir() {
        return local;
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn read_data(dir: &Path, name: &str) -> Result<String, CliError> {
    let p = dir.join(name);
    std::fs::read_to_string(&p).map_err(|e| CliError::MissingData(format!("{}: {e}", p.display())))
}

pub fn read_file(p: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.to_path_buf(), source })
}

/// Rendered outcome of one invocation.
#[derive(Clone, Debug)]
pub struct Output {
    pub status: Status,
    /// What goes to stdout: the report, or the JSON object with `--json`.
    pub text: String,
    pub result: CommandResult,
}

/// Parses and runs one command line (argv[0] included).
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let status = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Status::Pass,
                _ => Status::Usage,
            };
            let text = e.render().to_string();
            return Output { status, text: text.clone(), result: CommandResult::new(status, text, Value::Null) };
        }
    };
    let result = commands::dispatch(&cli).unwrap_or_else(|e| CommandResult::error(&e));
    let text = if cli.json {
        let mut s = serde_json::to_string_pretty(&result.json(&cli.command.name())).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        result.report.clone()
    };
    Output { status: result.status, text, result }
}
