use std::collections::BTreeMap;

use dcfactor::wave::{NORM_TOLERANCE, PRUNE_THRESHOLD};
use dcfactor::{BasisLabel, DualityState, OracleFn, RegisterSpec, SubWaveBundle};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SPEC_REG1: u64 = 4095;
const SPEC_REG2: u64 = 15;

fn spec() -> RegisterSpec {
    RegisterSpec::new(0, SPEC_REG1, SPEC_REG2).unwrap()
}

/// Random normalized state with up to `max_terms` distinct labels.
fn sparse_state(max_terms: usize) -> impl Strategy<Value = DualityState> {
    prop::collection::btree_map(
        (0..=SPEC_REG1, 0..=SPEC_REG2),
        (-1.0f64..1.0, -1.0f64..1.0),
        1..max_terms,
    )
    .prop_filter_map("nonzero", |terms| {
        let norm: f64 = terms.values().map(|(re, im)| re * re + im * im).sum::<f64>().sqrt();
        (norm > 1e-3).then(|| {
            let amps = terms
                .into_iter()
                .map(|((r1, r2), (re, im))| (BasisLabel::new(r1, r2), Complex64::new(re, im) / norm));
            DualityState::from_amplitudes(spec(), amps).unwrap()
        })
    })
}

fn coefficients() -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..5).prop_map(|mut cs| {
        // force the sum to one by adjusting the last coefficient
        let (sre, sim) = cs.iter().fold((0.0, 0.0), |(a, b), (re, im)| (a + re, b + im));
        let last = cs.last_mut().unwrap();
        last.0 += 1.0 - sre;
        last.1 -= sim;
        cs.into_iter().map(|(re, im)| Complex64::new(re, im)).collect()
    })
}

fn max_diff(a: &DualityState, b: &DualityState) -> f64 {
    a.support()
        .union(&b.support())
        .map(|&l| (a.amplitude(l) - b.amplitude(l)).norm())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn combine_inverts_divide(state in sparse_state(200), coeffs in coefficients()) {
        let restored = state.clone().divide(&coeffs).unwrap().combine().unwrap();
        prop_assert!(max_diff(&state, &restored) < 1e-9);
    }

    #[test]
    fn divided_parts_are_scaled_copies(state in sparse_state(100), coeffs in coefficients()) {
        let bundle = state.clone().divide(&coeffs).unwrap();
        for (part, c) in bundle.parts().iter().zip(bundle.coefficients()) {
            for (label, amp) in state.iter() {
                prop_assert!((part.amplitude(label) - amp * c).norm() <= PRUNE_THRESHOLD);
            }
        }
    }

    #[test]
    fn oracles_preserve_norm(state in sparse_state(300), salt in 0u64..16) {
        let before = state.norm_sq();
        let f = OracleFn::function("mix", move |x| Some((x * 7 + salt) % 16));
        let s = OracleFn::marking("parity", move |x, y| (x + y + salt) % 3 == 0);
        let after_f = state.clone().apply_function(&f).unwrap();
        prop_assert!((after_f.norm_sq() - before).abs() < 1e-12);
        prop_assert_eq!(after_f.support_size(), state.support_size());
        let after_s = state.apply_sign(&s).unwrap();
        prop_assert!((after_s.norm_sq() - before).abs() < 1e-12);
    }

    #[test]
    fn sign_flip_interference_is_exact(state in sparse_state(10_000), salt in 0u64..7) {
        let marked = move |x: u64, y: u64| (x ^ y).wrapping_mul(2654435761).wrapping_add(salt) % 5 == 0;
        let oracle = OracleFn::marking("hash", marked);
        let mut bundle = state.clone().halve().unwrap();
        bundle.transform_part(1, |s| s.apply_sign(&oracle)).unwrap();
        let combined = bundle.combine().unwrap();
        for (label, amp) in state.iter() {
            let expected = if marked(label.reg1, label.reg2) { amp } else { Complex64::default() };
            prop_assert!((combined.amplitude(label) - expected).norm() < 1e-9);
        }
        prop_assert!(combined.support().is_subset(&state.support()));
    }

    #[test]
    fn readout_deterministic_and_in_support(state in sparse_state(500), seed: u64) {
        let a = state.readout(seed);
        prop_assert_eq!(a, state.readout(seed));
        prop_assert!(state.support().contains(&a.outcome.unwrap()));
        prop_assert!(a.success_probability <= 1.0);
        prop_assert!((a.success_probability - state.norm_sq().min(1.0)).abs() < 1e-15);
    }

    #[test]
    fn norm_bound_holds(state in sparse_state(1000)) {
        prop_assert!(state.norm_sq() <= 1.0 + NORM_TOLERANCE);
    }
}

#[test]
fn readout_frequencies_match_born_weights() {
    // sub-normalized 8-term state; readout renormalizes
    let weights: [f64; 8] = [0.30, 0.05, 0.10, 0.02, 0.18, 0.07, 0.20, 0.08];
    let scale = 0.6;
    let state = DualityState::from_amplitudes(
        spec(),
        weights.iter().enumerate().map(|(i, w)| {
            let amp = Complex64::from_polar((w * scale).sqrt(), i as f64);
            (BasisLabel::new(10 * i as u64 + 3, i as u64), amp)
        }),
    )
    .unwrap();
    assert!((state.norm_sq() - scale).abs() < 1e-12);

    let samples = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut counts: BTreeMap<BasisLabel, u64> = BTreeMap::new();
    for _ in 0..samples {
        let r = state.readout_with(&mut rng);
        assert!((r.success_probability - scale).abs() < 1e-12);
        *counts.entry(r.outcome.unwrap()).or_default() += 1;
    }
    for (i, w) in weights.iter().enumerate() {
        let label = BasisLabel::new(10 * i as u64 + 3, i as u64);
        let observed = counts.get(&label).copied().unwrap_or(0) as f64;
        let mean = samples as f64 * w;
        let sigma = (samples as f64 * w * (1.0 - w)).sqrt();
        assert!((observed - mean).abs() <= 3.0 * sigma, "{label}: {observed} vs {mean} ± {sigma}");
    }
}

#[test]
fn readout_of_seed_matches_fresh_generator() {
    let state = DualityState::uniform(spec(), 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    assert_eq!(state.readout(5), state.readout_with(&mut rng));
}

#[test]
fn zero_coefficient_gives_empty_part() {
    let state = DualityState::uniform(spec(), 1).unwrap();
    let bundle = state.divide(&[Complex64::new(1.0, 0.0), Complex64::default()]).unwrap();
    assert!(bundle.parts()[1].is_empty());
    let rebuilt = SubWaveBundle::from_parts(bundle.parts().to_vec(), bundle.coefficients().to_vec());
    assert_eq!(rebuilt.combine().unwrap().support_size(), 4096);
}
