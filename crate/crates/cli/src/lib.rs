//! Command-line front end for `dcfactor`: single runs with text or JSON
//! reports and line-delimited JSON traces, plus a CSV benchmark comparing
//! primitive-operation counts against classical step counts.

pub mod bench;
pub mod config;
pub mod report;
pub mod trace_io;

use std::io::Write;
use std::path::PathBuf;

use thiserror::Error;

pub use config::{Algorithm, Format, RunConfig};
pub use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Factor(#[from] dcfactor::FactorError),
    #[error(transparent)]
    Baseline(#[from] dcfactor::BaselineError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

/// Process exit status for a finished run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    /// Factors found or primality certified.
    Conclusive,
    /// The algorithm ran but produced no answer.
    NoResult,
}

impl RunStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Conclusive => 0,
            RunStatus::NoResult => 2,
        }
    }
}

/// Exit code for any error, usage or validation.
pub const EXIT_ERROR: i32 = 1;

/// Executes one configured run, writing the report to `out` and the trace
/// (if requested) to its file.
pub fn run(config: &RunConfig, out: &mut impl Write) -> Result<RunStatus, CliError> {
    config.validate()?;
    let (report, trace) = report::execute(config)?;
    let rendered = match config.format {
        Format::Text => report.to_text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
    };
    out.write_all(rendered.as_bytes()).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })?;
    if let Some(path) = &config.trace_path {
        trace_io::write_trace(path, &trace)?;
    }
    Ok(report.run_status())
}
