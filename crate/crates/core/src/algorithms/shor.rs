//! Period finding without a Fourier transform.
//!
//! The first register is spread uniformly over `[0, q)` and `a^x mod n` is
//! computed into the second. After the divider, the lower path flips every
//! term except those with second register 1 and nonzero first register. The
//! combiner leaves exactly `{|k·r⟩|1⟩ : k ≥ 1, k·r < q}`, where `r` is the
//! order of `a`, so the running gcd of a few readouts recovers `r`.

use alloc::vec;
use alloc::vec::Vec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{label, FactorError, FactorOutcome, OutcomeStatus};
use crate::arith::{gcd, modexp, mul_mod};
use crate::trace::{Primitive, Recorder};
use crate::wave::{DualityState, OracleFn, RegisterSpec, WaveError, MAX_WAVE_WIDTH};

const NAME: &str = "shor";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShorParams {
    pub base_a: u64,
    pub precision_q: u64,
    pub max_samples: u32,
    /// Consecutive samples that must leave the running gcd unchanged.
    pub stability_window: u32,
    /// Skip the `n² < q ≤ 2n²` check.
    pub allow_q_out_of_range: bool,
}

impl ShorParams {
    pub const DEFAULT_MAX_SAMPLES: u32 = 32;
    pub const DEFAULT_STABILITY_WINDOW: u32 = 3;

    /// Base `a` with `q` the power of two in `(n², 2n²]`.
    pub fn new(n: u64, base_a: u64) -> Self {
        let n_sq = (n as u128) * (n as u128);
        let q = (n_sq + 1).next_power_of_two();
        Self {
            base_a,
            precision_q: u64::try_from(q).unwrap_or(u64::MAX),
            max_samples: Self::DEFAULT_MAX_SAMPLES,
            stability_window: Self::DEFAULT_STABILITY_WINDOW,
            allow_q_out_of_range: false,
        }
    }

    pub fn with_precision(mut self, q: u64, allow_out_of_range: bool) -> Self {
        self.precision_q = q;
        self.allow_q_out_of_range = allow_out_of_range;
        self
    }

    pub fn with_max_samples(mut self, max_samples: u32) -> Self {
        self.max_samples = max_samples;
        self
    }

    fn validate(&self, n: u64) -> Result<(), FactorError> {
        if n < 9 {
            return Err(FactorError::InputTooSmall { n });
        }
        if n.is_multiple_of(2) {
            return Err(FactorError::EvenInput { n });
        }
        if self.base_a < 2 || self.base_a >= n {
            return Err(FactorError::BaseOutOfRange { a: self.base_a, n });
        }
        let q = self.precision_q as u128;
        let n_sq = (n as u128) * (n as u128);
        let in_range = n_sq < q && q <= 2 * n_sq;
        if q < 2 || (!in_range && !self.allow_q_out_of_range) {
            return Err(FactorError::PrecisionOutOfRange { q: self.precision_q, n });
        }
        Ok(())
    }
}

/// The post-combine wave for base `a` and precision `q`.
pub fn shor_wave(n: u64, params: &ShorParams) -> Result<DualityState, FactorError> {
    params.validate(n)?;
    let powers = power_table(n, params)?;
    cycle(n, params, &powers, 1, &mut Recorder::default())
}

/// `a^x mod n` for every `x < q`. The oracle is evaluated once per basis
/// state on every cycle, so the values are tabulated up front.
fn power_table(n: u64, params: &ShorParams) -> Result<Vec<u64>, FactorError> {
    let q = params.precision_q;
    if q > MAX_WAVE_WIDTH {
        return Err(WaveError::TooWide { width: q }.into());
    }
    let (a, n) = (params.base_a as u128, n as u128);
    let mut table = Vec::with_capacity(q as usize);
    let mut value = 1 % n;
    for _ in 0..q {
        table.push(value as u64);
        value = mul_mod(value, a, n);
    }
    debug_assert!(table.last().is_none_or(|&v| v as u128 == modexp(a, (q - 1) as u128, n)));
    Ok(table)
}

fn cycle(
    n: u64,
    params: &ShorParams,
    powers: &[u64],
    iteration: u64,
    rec: &mut Recorder,
) -> Result<DualityState, FactorError> {
    let spec = RegisterSpec::new(0, params.precision_q - 1, n - 1)?;
    let power = OracleFn::function("modexp", |x| powers.get(x as usize).copied());
    let query = OracleFn::marking("unit_nonzero", |x, value| value == 1 && x != 0);

    let state = DualityState::uniform(spec, 0)?;
    rec.state(
        Primitive::Init,
        label(NAME, iteration, "prepare"),
        &state,
        vec![("width", spec.width().into())],
    );
    let state = state.apply_function(&power)?;
    rec.state(
        Primitive::ApplyFunction,
        label(NAME, iteration, "modexp"),
        &state,
        vec![("oracle", power.name().into())],
    );
    let mut bundle = state.halve()?;
    rec.bundle(label(NAME, iteration, "divide"), &bundle, vec![("parts", 2u64.into())]);
    bundle.transform_part(1, |s| s.apply_sign(&query))?;
    rec.state(
        Primitive::ApplySign,
        label(NAME, iteration, "query"),
        &bundle.parts()[1],
        vec![("oracle", query.name().into()), ("path", "lower".into())],
    );
    let combined = bundle.combine()?;
    rec.state(Primitive::Combine, label(NAME, iteration, "combine"), &combined, vec![]);
    Ok(combined)
}

/// Infers the order of `params.base_a` modulo `n` and derives factors from it.
///
/// Each sample reruns the whole prepare/interfere/readout cycle. Sampling
/// stops once the running gcd of the readouts has stayed unchanged for
/// `stability_window` samples, or after `max_samples`.
pub fn dc_shor(n: u64, params: &ShorParams, seed: u64) -> Result<FactorOutcome, FactorError> {
    if n >= 9 && n % 2 == 1 && (2..n).contains(&params.base_a) {
        let g = gcd(params.base_a as u128, n as u128) as u64;
        if g > 1 {
            let mut factors = vec![g, n / g];
            factors.sort_unstable();
            return Ok(FactorOutcome {
                input_n: n,
                status: OutcomeStatus::DegenerateBase,
                factors,
                period: None,
                foundlist: Vec::new(),
                success_probability: 1.0,
                iterations: 0,
                op_counts: Default::default(),
                seed,
                trace: Vec::new(),
            });
        }
    }
    params.validate(n)?;

    let powers = power_table(n, params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rec = Recorder::default();
    let mut running = 0u64;
    let mut unchanged = 0;
    let mut iterations = 0;
    let mut success_probability = 0.0;

    for iteration in 1..=u64::from(params.max_samples) {
        iterations = iteration;
        let wave = cycle(n, params, &powers, iteration, &mut rec)?;
        let readout = wave.readout_with(&mut rng);
        success_probability = readout.success_probability;
        let mut payload = vec![("success_probability", readout.success_probability.into())];
        let Some(hit) = readout.outcome else {
            payload.push(("outcome", "nothing".into()));
            rec.state(Primitive::Readout, label(NAME, iteration, "readout"), &wave, payload);
            break;
        };
        let next = gcd(running as u128, hit.reg1 as u128) as u64;
        payload.push(("reg1", hit.reg1.into()));
        payload.push(("running_gcd", next.into()));
        rec.state(Primitive::Readout, label(NAME, iteration, "readout"), &wave, payload);
        if next == running {
            unchanged += 1;
        } else {
            running = next;
            unchanged = 0;
        }
        if unchanged >= params.stability_window {
            break;
        }
    }

    let period = (running > 0).then_some(running);
    let (status, factors) = match period {
        None => (OutcomeStatus::NoPeriod, Vec::new()),
        Some(r) => match factors_from_period(n, params.base_a, r) {
            Some(f) => (OutcomeStatus::Factored, f),
            None => (OutcomeStatus::PostProcessingFailed, Vec::new()),
        },
    };
    let (trace, op_counts) = rec.finish();
    Ok(FactorOutcome {
        input_n: n,
        status,
        factors,
        period,
        foundlist: Vec::new(),
        success_probability,
        iterations,
        op_counts,
        seed,
        trace,
    })
}

/// `gcd(a^{r/2} ± 1, n)`, keeping nontrivial values. `None` when `r` is odd,
/// `a^{r/2} ≡ −1`, or neither gcd is a proper divisor.
fn factors_from_period(n: u64, a: u64, r: u64) -> Option<Vec<u64>> {
    if r % 2 == 1 {
        return None;
    }
    let (n128, half) = (n as u128, modexp(a as u128, (r / 2) as u128, n as u128));
    if half == n128 - 1 {
        return None;
    }
    let mut factors: Vec<u64> = [(half + n128 - 1) % n128, half + 1]
        .into_iter()
        .map(|v| gcd(v, n128) as u64)
        .filter(|&f| f > 1 && f < n)
        .collect();
    factors.sort_unstable();
    factors.dedup();
    (!factors.is_empty()).then_some(factors)
}
