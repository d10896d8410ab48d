//! Fermat representations by interference.
//!
//! The wave spans `x ∈ [⌈√n⌉, ⌊n/2⌋]`. The upper path is multiplied by +1
//! where `x² − n` is a perfect square and by −1 elsewhere; at the combiner
//! the −1 terms cancel the untouched lower path, leaving every valid `X`
//! with equal amplitude. A readout gives `X`, then `Y = √(X² − n)` and the
//! factors `X + Y`, `X − Y`. An empty wave means no representation exists,
//! which for odd `n` means `n` is prime.

use alloc::vec;
use alloc::vec::Vec;

use super::{label, FactorError, FactorOutcome, OutcomeStatus};
use crate::arith::{fermat_sign, isqrt, isqrt_ceil};
use crate::trace::{Primitive, Recorder};
use crate::wave::{DualityState, OracleFn, RegisterSpec};

const NAME: &str = "fermat";

fn validate(n: u64) -> Result<(), FactorError> {
    if n < 9 {
        return Err(FactorError::InputTooSmall { n });
    }
    if n.is_multiple_of(2) {
        return Err(FactorError::EvenInput { n });
    }
    Ok(())
}

/// The post-combine wave over `[⌈√n⌉, ⌊n/2⌋]`.
pub fn fermat_wave(n: u64) -> Result<DualityState, FactorError> {
    validate(n)?;
    cycle(n, &mut Recorder::default())
}

fn cycle(n: u64, rec: &mut Recorder) -> Result<DualityState, FactorError> {
    let spec = RegisterSpec::new(isqrt_ceil(n as u128) as u64, n / 2, 0)?;
    // the range starts at ⌈√n⌉, so fermat_sign never sees x² < n
    let query = OracleFn::sign("square_difference", |x, _| {
        fermat_sign(x as u128, n as u128).unwrap_or(-1)
    });

    let state = DualityState::uniform(spec, 0)?;
    rec.state(
        Primitive::Init,
        label(NAME, 1, "prepare"),
        &state,
        vec![("width", spec.width().into())],
    );
    let mut bundle = state.halve()?;
    rec.bundle(label(NAME, 1, "divide"), &bundle, vec![("parts", 2u64.into())]);
    bundle.transform_part(0, |s| s.apply_sign(&query))?;
    rec.state(
        Primitive::ApplySign,
        label(NAME, 1, "query"),
        &bundle.parts()[0],
        vec![("oracle", query.name().into()), ("path", "upper".into())],
    );
    let combined = bundle.combine()?;
    rec.state(Primitive::Combine, label(NAME, 1, "combine"), &combined, vec![]);
    Ok(combined)
}

/// Finds a representation `n = X² − Y²` and returns `[X + Y, X − Y]`.
pub fn dc_fermat(n: u64, seed: u64) -> Result<FactorOutcome, FactorError> {
    validate(n)?;
    let mut rec = Recorder::default();
    let wave = cycle(n, &mut rec)?;
    let readout = wave.readout(seed);

    let mut payload = vec![("success_probability", readout.success_probability.into())];
    let factors = match readout.outcome {
        Some(hit) => {
            let x = hit.reg1 as u128;
            let y = isqrt(x * x - n as u128);
            payload.push(("reg1", hit.reg1.into()));
            payload.push(("y", (y as u64).into()));
            let (p, q) = ((x + y) as u64, (x - y) as u64);
            assert_eq!(
                p as u128 * q as u128,
                n as u128,
                "X = {x} does not give a Fermat representation of {n}"
            );
            vec![p, q]
        }
        None => {
            payload.push(("outcome", "nothing".into()));
            Vec::new()
        }
    };
    rec.state(Primitive::Readout, label(NAME, 1, "readout"), &wave, payload);

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
        foundlist: Vec::new(),
        success_probability: readout.success_probability,
        iterations: 1,
        op_counts,
        seed,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::string::ToString;
    use crate::wave::BasisLabel;

    #[test]
    fn twenty_one() {
        let wave = fermat_wave(21).unwrap();
        assert_eq!(wave.support().into_iter().collect::<Vec<_>>(), vec![BasisLabel::new(5, 0)]);
        let out = dc_fermat(21, 0).unwrap();
        assert_eq!(out.factors, vec![7, 3]);
        assert_eq!(out.status, OutcomeStatus::Factored);
    }

    #[test]
    fn nine_is_a_square() {
        let out = dc_fermat(9, 0).unwrap();
        assert_eq!(out.factors, vec![3, 3]);
    }

    #[test]
    fn eleven_is_prime() {
        let out = dc_fermat(11, 0).unwrap();
        assert!(out.factors.is_empty());
        assert_eq!(out.status, OutcomeStatus::PrimeCertified);
        assert_eq!(out.status.describe(), "no representation found (prime)");
    }

    #[test]
    fn even_rejected() {
        let err = dc_fermat(22, 0).unwrap_err();
        assert_eq!(err.to_string(), "Fermat method requires odd input, got 22");
    }

    #[test]
    fn several_representations_are_all_kept() {
        // 45 = 7² − 2² = 9² − 6²
        let wave = fermat_wave(45).unwrap();
        let xs: Vec<u64> = wave.iter().map(|(l, _)| l.reg1).collect();
        assert_eq!(xs, vec![7, 9]);
        for seed in 0..8 {
            let f = dc_fermat(45, seed).unwrap().factors;
            assert_eq!(f[0] * f[1], 45);
        }
    }

    #[test]
    fn five_ops() {
        assert_eq!(dc_fermat(21, 0).unwrap().ops_per_iteration(), Some(5));
        assert_eq!(dc_fermat(11, 0).unwrap().ops_per_iteration(), Some(5));
    }
}
