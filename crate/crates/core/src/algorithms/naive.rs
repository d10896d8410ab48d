//! Divisor marking.
//!
//! Every candidate `i ∈ [2, nearest(√n) + 1]` gets a uniform amplitude. On the
//! lower path the divisibility indicator is computed into the second
//! register, divisors that have not been found yet keep their sign and
//! everything else is flipped, and the indicator is computed again to clear
//! the second register. At the combiner the flipped terms cancel against the
//! upper path, so only unfound divisors remain. Each readout adds one divisor
//! to the found list; an empty wave ends the loop.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{label, prime_factors, FactorError, FactorOutcome, OutcomeStatus};
use crate::arith::{divides_indicator, nearest_sqrt};
use crate::trace::{PayloadValue, Primitive, Recorder};
use crate::wave::{DualityState, OracleFn, RegisterSpec};

const NAME: &str = "naive";

/// First-register range `[2, nearest(√n) + 1]`.
pub fn naive_range(n: u64) -> (u64, u64) {
    (2, nearest_sqrt(n as u128) as u64 + 1)
}

/// The post-combine wave for one pass with the given found list.
pub fn naive_wave(n: u64, foundlist: &[u64]) -> Result<DualityState, FactorError> {
    if n < 4 {
        return Err(FactorError::InputTooSmall { n });
    }
    let found: BTreeSet<u64> = foundlist.iter().copied().collect();
    cycle(n, &found, 1, &mut Recorder::default())
}

fn cycle(
    n: u64,
    found: &BTreeSet<u64>,
    iteration: u64,
    rec: &mut Recorder,
) -> Result<DualityState, FactorError> {
    let (lo, hi) = naive_range(n);
    let spec = RegisterSpec::new(lo, hi, 1)?;
    let divides = OracleFn::function("divides", |i| Some(divides_indicator(n as u128, i as u128) as u64));
    let query = OracleFn::marking("unfound_divisor", |i, flag| flag == 1 && !found.contains(&i));

    let state = DualityState::uniform(spec, 0)?;
    rec.state(
        Primitive::Init,
        label(NAME, iteration, "prepare"),
        &state,
        vec![("width", spec.width().into())],
    );

    let mut bundle = state.halve()?;
    rec.bundle(label(NAME, iteration, "divide"), &bundle, vec![("parts", 2u64.into())]);

    let lower = || vec![("oracle", PayloadValue::from(divides.name())), ("path", "lower".into())];
    bundle.transform_part(1, |s| s.apply_function(&divides))?;
    rec.state(
        Primitive::ApplyFunction,
        label(NAME, iteration, "compute-indicator"),
        &bundle.parts()[1],
        lower(),
    );
    bundle.transform_part(1, |s| s.apply_sign(&query))?;
    rec.state(
        Primitive::ApplySign,
        label(NAME, iteration, "query"),
        &bundle.parts()[1],
        vec![("oracle", query.name().into()), ("path", "lower".into())],
    );
    bundle.transform_part(1, |s| s.apply_function(&divides))?;
    rec.state(
        Primitive::ApplyFunction,
        label(NAME, iteration, "clear-indicator"),
        &bundle.parts()[1],
        lower(),
    );

    let combined = bundle.combine()?;
    rec.state(Primitive::Combine, label(NAME, iteration, "combine"), &combined, vec![]);
    Ok(combined)
}

/// Runs the divisor-marking loop until the wave comes out empty.
///
/// The found list holds every divisor of `n` in the candidate range, in the
/// order they were read out. `factors` is the prime factorization of `n`:
/// the prime members of the found list, plus the one cofactor above the
/// range when it exists.
pub fn naive_factorize(n: u64, seed: u64) -> Result<FactorOutcome, FactorError> {
    if n < 4 {
        return Err(FactorError::InputTooSmall { n });
    }
    let (lo, hi) = naive_range(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rec = Recorder::default();
    let mut found = BTreeSet::new();
    let mut foundlist = Vec::new();
    let mut first_probability = None;
    let mut iterations = 0;

    // one productive pass per candidate at most, plus the terminating one
    for iteration in 1..=(hi - lo + 2) {
        iterations = iteration;
        let wave = cycle(n, &found, iteration, &mut rec)?;
        let readout = wave.readout_with(&mut rng);
        first_probability.get_or_insert(readout.success_probability);
        let mut payload = vec![("success_probability", readout.success_probability.into())];
        match readout.outcome {
            Some(hit) => {
                payload.push(("reg1", hit.reg1.into()));
                payload.push(("reg2", hit.reg2.into()));
            }
            None => payload.push(("outcome", "nothing".into())),
        }
        rec.state(Primitive::Readout, label(NAME, iteration, "readout"), &wave, payload);
        match readout.outcome {
            Some(hit) if found.insert(hit.reg1) => foundlist.push(hit.reg1),
            _ => break,
        }
    }

    let factors = complete_factorization(n, &foundlist);
    let status = if factors.is_empty() {
        OutcomeStatus::PrimeCertified
    } else {
        OutcomeStatus::Factored
    };
    let (trace, op_counts) = rec.finish();
    Ok(FactorOutcome {
        input_n: n,
        status,
        factors,
        period: None,
        foundlist,
        success_probability: first_probability.unwrap_or(0.0),
        iterations,
        op_counts,
        seed,
        trace,
    })
}

/// Prime factorization of `n` from the prime divisors found in range. What
/// remains after dividing them out has no prime factor in range, so it is 1
/// or a single prime.
fn complete_factorization(n: u64, foundlist: &[u64]) -> Vec<u64> {
    if foundlist.is_empty() {
        return Vec::new();
    }
    let mut primes: Vec<u64> = foundlist
        .iter()
        .copied()
        .filter(|&d| prime_factors(d).len() == 1)
        .collect();
    primes.sort_unstable();
    let mut rest = n;
    let mut factors = Vec::new();
    for p in primes {
        while rest.is_multiple_of(p) {
            factors.push(p);
            rest /= p;
        }
    }
    if rest > 1 {
        factors.push(rest);
    }
    factors
}
