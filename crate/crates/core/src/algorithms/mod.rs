//! The three interference-based factoring procedures.
//!
//! Each one prepares a uniform wave, runs it through a two-way divider,
//! marks the interesting basis values with a sign oracle on one path and
//! lets the combiner cancel everything else. What survives is read out.

mod fermat;
mod naive;
mod shor;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use thiserror::Error;

use crate::trace::{OpCounts, TraceEvent};
use crate::wave::WaveError;

pub use fermat::{dc_fermat, fermat_wave};
pub use naive::{naive_factorize, naive_range, naive_wave};
pub use shor::{dc_shor, shor_wave, ShorParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("input too small: {n}")]
    InputTooSmall { n: u64 },
    #[error("Fermat method requires odd input, got {n}")]
    EvenInput { n: u64 },
    #[error("base {a} must satisfy 2 ≤ a < {n}")]
    BaseOutOfRange { a: u64, n: u64 },
    #[error("precision q = {q} outside ({n}², 2·{n}²]; pass the override to allow it")]
    PrecisionOutOfRange { q: u64, n: u64 },
    #[error("{0}")]
    Wave(#[from] WaveError),
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum OutcomeStatus {
    /// Nontrivial factors found.
    Factored,
    /// The base shared a factor with `n`; no wave was prepared.
    DegenerateBase,
    /// The wave came out empty, which certifies that `n` is prime.
    PrimeCertified,
    /// A period was inferred but it does not yield factors with this base.
    PostProcessingFailed,
    /// No period could be inferred.
    NoPeriod,
}

impl OutcomeStatus {
    pub fn describe(self) -> &'static str {
        match self {
            OutcomeStatus::Factored => "factors found",
            OutcomeStatus::DegenerateBase => "base shares a factor with n",
            OutcomeStatus::PrimeCertified => "no representation found (prime)",
            OutcomeStatus::PostProcessingFailed => {
                "post-processing failed, retry with different base"
            }
            OutcomeStatus::NoPeriod => "no period found",
        }
    }

    /// Whether the run produced an answer (factors or a primality certificate).
    pub fn is_conclusive(self) -> bool {
        matches!(
            self,
            OutcomeStatus::Factored | OutcomeStatus::DegenerateBase | OutcomeStatus::PrimeCertified
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorOutcome {
    pub input_n: u64,
    pub status: OutcomeStatus,
    /// Factors with `1 < f < n` that divide `n`.
    pub factors: Vec<u64>,
    /// Inferred multiplicative order (period finding only).
    pub period: Option<u64>,
    /// Divisors in discovery order (divisor marking only).
    pub foundlist: Vec<u64>,
    pub success_probability: f64,
    /// Prepare/interfere/readout cycles executed.
    pub iterations: u64,
    pub op_counts: OpCounts,
    pub seed: u64,
    pub trace: Vec<TraceEvent>,
}

impl FactorOutcome {
    /// Primitive applications per cycle, or `None` if no cycle ran or the
    /// total does not split evenly.
    pub fn ops_per_iteration(&self) -> Option<u64> {
        let total = self.op_counts.total();
        (self.iterations > 0 && total.is_multiple_of(self.iterations)).then(|| total / self.iterations)
    }
}

fn label(algorithm: &str, iteration: u64, step: &str) -> String {
    format!("{algorithm}#{iteration}:{step}")
}

/// Splits `n` into prime factors by trial division, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
