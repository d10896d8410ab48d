use std::fmt::Write as _;

use dcfactor::baselines::{classical_fermat, trial_division};
use dcfactor::{
    dc_fermat, dc_shor, naive_factorize, BaselineError, FactorOutcome, OpCounts, OutcomeStatus,
    ShorParams, TraceEvent,
};
use serde::{Deserialize, Serialize};

use crate::config::{Algorithm, RunConfig};
use crate::{CliError, RunStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportStatus {
    Factored,
    DegenerateBase,
    PrimeCertified,
    PostProcessingFailed,
    NoPeriod,
}

impl ReportStatus {
    fn message(self) -> &'static str {
        match self {
            ReportStatus::Factored => OutcomeStatus::Factored.describe(),
            ReportStatus::DegenerateBase => OutcomeStatus::DegenerateBase.describe(),
            ReportStatus::PrimeCertified => OutcomeStatus::PrimeCertified.describe(),
            ReportStatus::PostProcessingFailed => OutcomeStatus::PostProcessingFailed.describe(),
            ReportStatus::NoPeriod => OutcomeStatus::NoPeriod.describe(),
        }
    }
}

impl From<OutcomeStatus> for ReportStatus {
    fn from(s: OutcomeStatus) -> Self {
        match s {
            OutcomeStatus::Factored => ReportStatus::Factored,
            OutcomeStatus::DegenerateBase => ReportStatus::DegenerateBase,
            OutcomeStatus::PrimeCertified => ReportStatus::PrimeCertified,
            OutcomeStatus::PostProcessingFailed => ReportStatus::PostProcessingFailed,
            OutcomeStatus::NoPeriod => ReportStatus::NoPeriod,
        }
    }
}

/// What a run printed. Text and JSON renderings carry the same values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub algorithm: Algorithm,
    pub n: u128,
    pub seed: u64,
    pub status: ReportStatus,
    pub message: String,
    pub factors: Vec<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub foundlist: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub success_probability: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ops_per_iteration: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op_counts: Option<OpCounts>,
    /// Loop iterations of a classical baseline.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<u64>,
}

impl Report {
    fn from_outcome(algorithm: Algorithm, out: &FactorOutcome) -> Self {
        let status = ReportStatus::from(out.status);
        Report {
            algorithm,
            n: out.input_n as u128,
            seed: out.seed,
            status,
            message: status.message().to_string(),
            factors: out.factors.iter().map(|&f| f as u128).collect(),
            period: out.period,
            foundlist: (algorithm == Algorithm::Naive).then(|| out.foundlist.clone()),
            success_probability: Some(out.success_probability),
            iterations: Some(out.iterations),
            ops_per_iteration: out.ops_per_iteration(),
            op_counts: Some(out.op_counts.clone()),
            steps: None,
        }
    }

    fn baseline(algorithm: Algorithm, n: u128, seed: u64, factors: Vec<u128>, steps: u64) -> Self {
        let status = if factors.is_empty() {
            ReportStatus::PrimeCertified
        } else {
            ReportStatus::Factored
        };
        Report {
            algorithm,
            n,
            seed,
            status,
            message: status.message().to_string(),
            factors,
            period: None,
            foundlist: None,
            success_probability: None,
            iterations: None,
            ops_per_iteration: None,
            op_counts: None,
            steps: Some(steps),
        }
    }

    pub fn run_status(&self) -> RunStatus {
        match self.status {
            ReportStatus::Factored | ReportStatus::DegenerateBase | ReportStatus::PrimeCertified => {
                RunStatus::Conclusive
            }
            ReportStatus::PostProcessingFailed | ReportStatus::NoPeriod => RunStatus::NoResult,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let join = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(", ");
        let _ = writeln!(s, "algorithm: {}", self.algorithm);
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "seed: {}", self.seed);
        let _ = writeln!(s, "result: {}", self.message);
        if self.factors.is_empty() {
            let _ = writeln!(s, "factors: none");
        } else {
            let _ = writeln!(s, "factors: {}", join(&mut self.factors.iter().map(u128::to_string)));
        }
        if let Some(r) = self.period {
            let _ = writeln!(s, "period: {r}");
        }
        if let Some(found) = &self.foundlist {
            let _ = writeln!(s, "foundlist: {}", join(&mut found.iter().map(u64::to_string)));
        }
        if let Some(p) = self.success_probability {
            let _ = writeln!(s, "success_probability: {p}");
        }
        if let Some(i) = self.iterations {
            let _ = writeln!(s, "iterations: {i}");
        }
        if let Some(k) = self.ops_per_iteration {
            let _ = writeln!(s, "ops_per_iteration: {k}");
        }
        if let Some(counts) = &self.op_counts {
            let _ = writeln!(
                s,
                "op_counts: {}",
                join(&mut counts.iter().map(|(op, c)| format!("{op}={c}")))
            );
        }
        if let Some(steps) = self.steps {
            let _ = writeln!(s, "steps: {steps}");
        }
        s
    }
}

/// Runs the configured algorithm. Baselines produce an empty trace.
pub(crate) fn execute(config: &RunConfig) -> Result<(Report, Vec<TraceEvent>), CliError> {
    let n = config.n;
    let seed = config.seed;
    match config.algorithm {
        Algorithm::Naive | Algorithm::Shor | Algorithm::Fermat => {
            let n = n as u64;
            let outcome = match config.algorithm {
                Algorithm::Naive => naive_factorize(n, seed)?,
                Algorithm::Fermat => dc_fermat(n, seed)?,
                _ => dc_shor(n, &shor_params(config, n), seed)?,
            };
            let report = Report::from_outcome(config.algorithm, &outcome);
            Ok((report, outcome.trace))
        }
        Algorithm::Trial => {
            let r = trial_division(n)?;
            let factors = if r.factors() == [n] { Vec::new() } else { r.factors().to_vec() };
            Ok((Report::baseline(Algorithm::Trial, n, seed, factors, r.steps), Vec::new()))
        }
        Algorithm::ClassicalFermat => {
            let (factors, steps) = match classical_fermat(n) {
                Ok(r) => (r.factors().to_vec(), r.steps),
                Err(BaselineError::NoRepresentation { steps, .. }) => (Vec::new(), steps),
                Err(e) => return Err(e.into()),
            };
            Ok((Report::baseline(Algorithm::ClassicalFermat, n, seed, factors, steps), Vec::new()))
        }
    }
}

fn shor_params(config: &RunConfig, n: u64) -> ShorParams {
    let mut params = ShorParams::new(n, config.shor_base.unwrap_or(2));
    if let Some(q) = config.shor_q {
        params = params.with_precision(q, config.allow_q_out_of_range);
    }
    if let Some(m) = config.max_samples {
        params = params.with_max_samples(m);
    }
    params
}
