//! Primitive-operation counts of the simulated algorithms next to classical
//! step counts, one CSV row per odd composite.
//!
//! Every odd composite up to 10⁴ gets a row; above that the odd composites
//! are thinned to an evenly strided sample of about [`SAMPLED_ROWS`].

use std::fs::File;
use std::path::Path;

use dcfactor::arith::is_prime;
use dcfactor::baselines::{classical_fermat, trial_division};
use dcfactor::{dc_fermat, dc_shor, naive_factorize, ShorParams};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const CEILING: u64 = 1_000_000;
pub const DENSE_LIMIT: u64 = 10_000;
pub const SAMPLED_ROWS: usize = 1_000;

/// Base used for the period-finding column.
pub const BENCH_BASE: u64 = 2;

pub const HEADER: [&str; 6] = [
    "n",
    "dc_naive_ops",
    "dc_shor_ops",
    "dc_fermat_ops",
    "classical_fermat_steps",
    "trial_division_steps",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: u64,
    pub dc_naive_ops: u64,
    pub dc_shor_ops: u64,
    pub dc_fermat_ops: u64,
    pub classical_fermat_steps: u64,
    pub trial_division_steps: u64,
}

/// Odd composites in `[min, max]`, dense up to [`DENSE_LIMIT`], strided above.
pub fn bench_inputs(min: u64, max: u64) -> Vec<u64> {
    let odd_composites = |lo: u64, hi: u64| {
        (lo..=hi).filter(|n| n % 2 == 1 && *n >= 9 && !is_prime(*n as u128))
    };
    let mut inputs: Vec<u64> = odd_composites(min, max.min(DENSE_LIMIT)).collect();
    if max > DENSE_LIMIT {
        let above: Vec<u64> = odd_composites(min.max(DENSE_LIMIT + 1), max).collect();
        let stride = above.len().div_ceil(SAMPLED_ROWS).max(1);
        inputs.extend(above.into_iter().step_by(stride));
    }
    inputs
}

/// Period-finding parameters for the benchmark: the full `(n², 2n²]`
/// register is impractical to simulate across the range, so the precision is
/// the power of two at or above `4n`. Every order is below `n`, so the wave
/// still holds at least four multiples of it.
pub fn bench_shor_params(n: u64) -> ShorParams {
    let q = (4 * n).next_power_of_two();
    ShorParams::new(n, BENCH_BASE).with_precision(q, true)
}

pub fn bench_row(n: u64) -> Result<BenchRow, CliError> {
    let per_iteration = |out: dcfactor::FactorOutcome| {
        out.ops_per_iteration().ok_or_else(|| {
            CliError::usage(format!("uneven primitive counts for n = {}", out.input_n))
        })
    };
    Ok(BenchRow {
        n,
        dc_naive_ops: per_iteration(naive_factorize(n, 0)?)?,
        dc_shor_ops: per_iteration(dc_shor(n, &bench_shor_params(n), 0)?)?,
        dc_fermat_ops: per_iteration(dc_fermat(n, 0)?)?,
        classical_fermat_steps: classical_fermat(n as u128)?.steps,
        trial_division_steps: trial_division(n as u128)?.steps,
    })
}

pub fn bench_rows(min: u64, max: u64) -> Result<Vec<BenchRow>, CliError> {
    if min < 9 {
        return Err(CliError::usage(format!("--min must be at least 9, got {min}")));
    }
    if min > max {
        return Err(CliError::usage(format!("empty range: --min {min} > --max {max}")));
    }
    if max > CEILING {
        return Err(CliError::usage(format!("--max {max} exceeds the ceiling {CEILING}")));
    }
    bench_inputs(min, max).into_iter().map(bench_row).collect()
}

/// Runs the benchmark and writes the CSV to `output`.
pub fn bench(min: u64, max: u64, output: &Path) -> Result<Vec<BenchRow>, CliError> {
    let rows = bench_rows(min, max)?;
    let file = File::create(output).map_err(|source| CliError::Io {
        path: output.to_path_buf(),
        source,
    })?;
    let mut w = csv::Writer::from_writer(file);
    for row in &rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|source| CliError::Io { path: output.to_path_buf(), source })?;
    Ok(rows)
}
