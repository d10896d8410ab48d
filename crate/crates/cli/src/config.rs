use std::fmt;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Divisor marking by interference
    Naive,
    /// Period finding by interference
    Shor,
    /// Fermat representations by interference
    Fermat,
    /// Classical trial division
    Trial,
    /// Classical Fermat scan
    ClassicalFermat,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Shor => "shor",
            Algorithm::Fermat => "fermat",
            Algorithm::Trial => "trial",
            Algorithm::ClassicalFermat => "classical-fermat",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Options for the `run` subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct RunConfig {
    #[arg(long, value_enum)]
    pub algorithm: Algorithm,
    #[arg(long)]
    pub n: u128,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Base for period finding (default 2)
    #[arg(long = "base")]
    pub shor_base: Option<u64>,
    /// Precision register size for period finding (default: power of two in (n², 2n²])
    #[arg(long = "q")]
    pub shor_q: Option<u64>,
    /// Accept a --q outside (n², 2n²]
    #[arg(long)]
    pub allow_q_out_of_range: bool,
    /// Sample limit for period finding
    #[arg(long)]
    pub max_samples: Option<u32>,
    /// Write one JSON trace event per line to this file
    #[arg(long = "trace")]
    pub trace_path: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

impl RunConfig {
    pub fn new(algorithm: Algorithm, n: u128) -> Self {
        Self {
            algorithm,
            n,
            seed: 0,
            shor_base: None,
            shor_q: None,
            allow_q_out_of_range: false,
            max_samples: None,
            trace_path: None,
            format: Format::Text,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.algorithm != Algorithm::Shor {
            let stray = [
                ("--base", self.shor_base.is_some()),
                ("--q", self.shor_q.is_some()),
                ("--allow-q-out-of-range", self.allow_q_out_of_range),
                ("--max-samples", self.max_samples.is_some()),
            ];
            if let Some((flag, _)) = stray.iter().find(|(_, set)| *set) {
                return Err(CliError::usage(format!(
                    "{flag} only applies to --algorithm shor"
                )));
            }
        }
        if self.allow_q_out_of_range && self.shor_q.is_none() {
            return Err(CliError::usage("--allow-q-out-of-range requires --q"));
        }
        if self.max_samples == Some(0) {
            return Err(CliError::usage("--max-samples must be positive"));
        }
        if self.n < 4 {
            return Err(CliError::usage(format!("input too small: {}", self.n)));
        }
        let fermat = matches!(self.algorithm, Algorithm::Fermat | Algorithm::ClassicalFermat);
        if fermat && self.n.is_multiple_of(2) {
            return Err(CliError::usage(format!(
                "the Fermat method factors odd integers only; {} is even",
                self.n
            )));
        }
        let simulated = matches!(self.algorithm, Algorithm::Naive | Algorithm::Shor | Algorithm::Fermat);
        if simulated && self.n > u64::MAX as u128 {
            return Err(CliError::usage(format!(
                "n = {} is too wide for the wave simulator (limit {})",
                self.n,
                u64::MAX
            )));
        }
        Ok(())
    }
}
