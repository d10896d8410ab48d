//! Sparse two-register waves and the duality-computer primitives.
//!
//! A [`DualityState`] maps [`BasisLabel`]s to complex amplitudes, stored as a
//! vector sorted by label. Absent keys are exact zeros, and no stored amplitude is smaller in magnitude than
//! [`PRUNE_THRESHOLD`]. After a combiner pass the state may be sub-normalized;
//! [`DualityState::readout`] renormalizes over the surviving support and
//! reports the squared norm separately as the success probability.
//!
//! All primitives take their inputs by value and return fresh states.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Amplitudes below this magnitude are dropped.
pub const PRUNE_THRESHOLD: f64 = 1e-12;

/// Tolerance for norm bounds and divider coefficient sums.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Largest first-register range a state may be prepared over.
pub const MAX_WAVE_WIDTH: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WaveError {
    #[error("empty register range [{min}, {max}]")]
    EmptyRange { min: u64, max: u64 },
    #[error("wave width {width} exceeds the simulator limit of {MAX_WAVE_WIDTH}")]
    TooWide { width: u64 },
    #[error("basis label {label} outside the declared register ranges")]
    OutOfRange { label: BasisLabel },
    #[error("divider needs at least one coefficient")]
    NoCoefficients,
    #[error("divider coefficients must sum to one")]
    CoefficientSum,
    #[error("expected a {expected} oracle")]
    OracleKind { expected: OracleKind },
    #[error("oracle evaluation failed at basis value {value}")]
    OracleFailed { value: u64 },
    #[error("sign oracle must return ±1 (got {got} at {label})")]
    SignOutOfRange { label: BasisLabel, got: i8 },
    #[error("incompatible sub-waves")]
    IncompatibleSubWaves,
    #[error("part index {index} out of range")]
    NoSuchPart { index: usize },
}

/// `|reg1⟩|reg2⟩`. Ordered by `reg1` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    pub reg1: u64,
    pub reg2: u64,
}

impl BasisLabel {
    pub const fn new(reg1: u64, reg2: u64) -> Self {
        Self { reg1, reg2 }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}⟩|{}⟩", self.reg1, self.reg2)
    }
}

/// Ranges of the two registers. `reg1` spans `[reg1_min, reg1_max]`, `reg2`
/// spans `[0, reg2_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterSpec {
    reg1_min: u64,
    reg1_max: u64,
    reg2_max: u64,
}

impl RegisterSpec {
    pub fn new(reg1_min: u64, reg1_max: u64, reg2_max: u64) -> Result<Self, WaveError> {
        if reg1_min > reg1_max {
            return Err(WaveError::EmptyRange { min: reg1_min, max: reg1_max });
        }
        Ok(Self { reg1_min, reg1_max, reg2_max })
    }

    pub fn reg1_min(&self) -> u64 {
        self.reg1_min
    }

    pub fn reg1_max(&self) -> u64 {
        self.reg1_max
    }

    pub fn reg2_max(&self) -> u64 {
        self.reg2_max
    }

    /// Number of first-register values.
    pub fn width(&self) -> u64 {
        self.reg1_max - self.reg1_min + 1
    }

    pub fn contains(&self, label: BasisLabel) -> bool {
        (self.reg1_min..=self.reg1_max).contains(&label.reg1) && label.reg2 <= self.reg2_max
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Function,
    Sign,
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleKind::Function => "function-evaluation",
            OracleKind::Sign => "sign",
        })
    }
}

/// A pure per-basis-state oracle.
///
/// The function form maps `reg1` to a value XORed into `reg2`; `None` reports
/// an evaluation failure. The sign form maps `(reg1, reg2)` to ±1.
pub enum OracleFn<'a> {
    Function {
        name: &'static str,
        body: Box<dyn Fn(u64) -> Option<u64> + 'a>,
    },
    Sign {
        name: &'static str,
        body: Box<dyn Fn(u64, u64) -> i8 + 'a>,
    },
}

impl<'a> OracleFn<'a> {
    pub fn function(name: &'static str, body: impl Fn(u64) -> Option<u64> + 'a) -> Self {
        OracleFn::Function { name, body: Box::new(body) }
    }

    pub fn sign(name: &'static str, body: impl Fn(u64, u64) -> i8 + 'a) -> Self {
        OracleFn::Sign { name, body: Box::new(body) }
    }

    /// Sign oracle that keeps `+1` exactly where `marked` holds.
    pub fn marking(name: &'static str, marked: impl Fn(u64, u64) -> bool + 'a) -> Self {
        Self::sign(name, move |r1, r2| if marked(r1, r2) { 1 } else { -1 })
    }

    pub fn kind(&self) -> OracleKind {
        match self {
            OracleFn::Function { .. } => OracleKind::Function,
            OracleFn::Sign { .. } => OracleKind::Sign,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            OracleFn::Function { name, .. } | OracleFn::Sign { name, .. } => name,
        }
    }
}

impl fmt::Debug for OracleFn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OracleFn")
            .field("kind", &self.kind())
            .field("name", &self.name())
            .finish()
    }
}

/// Sparse wave over two registers. Possibly sub-normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityState {
    spec: RegisterSpec,
    /// Sorted by label, labels unique, no dust.
    amplitudes: Vec<(BasisLabel, Complex64)>,
}

/// Result of a readout measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Readout {
    /// `None` when the wave is empty.
    pub outcome: Option<BasisLabel>,
    /// `min(norm², 1)`, or 0 for an empty wave.
    pub success_probability: f64,
}

impl DualityState {
    /// The state with no amplitude anywhere.
    pub fn zero(spec: RegisterSpec) -> Self {
        Self { spec, amplitudes: Vec::new() }
    }

    /// Builds a state from explicit amplitudes, dropping entries below the
    /// pruning threshold.
    pub fn from_amplitudes(
        spec: RegisterSpec,
        amplitudes: impl IntoIterator<Item = (BasisLabel, Complex64)>,
    ) -> Result<Self, WaveError> {
        let terms: Vec<_> = amplitudes.into_iter().collect();
        if let Some(&(label, _)) = terms.iter().find(|(l, _)| !spec.contains(*l)) {
            return Err(WaveError::OutOfRange { label });
        }
        Ok(Self { spec, amplitudes: normalize_terms(terms) })
    }

    /// Equal amplitude `1/√K` on every `|i⟩|reg2_value⟩` of the first
    /// register range.
    pub fn uniform(spec: RegisterSpec, reg2_value: u64) -> Result<Self, WaveError> {
        let width = spec.width();
        if width > MAX_WAVE_WIDTH {
            return Err(WaveError::TooWide { width });
        }
        if reg2_value > spec.reg2_max {
            return Err(WaveError::OutOfRange {
                label: BasisLabel::new(spec.reg1_min, reg2_value),
            });
        }
        let amp = Complex64::new(1.0 / libm::sqrt(width as f64), 0.0);
        let amplitudes = (spec.reg1_min..=spec.reg1_max)
            .map(|i| (BasisLabel::new(i, reg2_value), amp))
            .collect();
        Ok(Self { spec, amplitudes })
    }

    pub fn spec(&self) -> RegisterSpec {
        self.spec
    }

    pub fn amplitude(&self, label: BasisLabel) -> Complex64 {
        self.amplitudes
            .binary_search_by_key(&label, |&(l, _)| l)
            .map(|i| self.amplitudes[i].1)
            .unwrap_or_default()
    }

    /// Nonzero amplitudes in label order.
    pub fn iter(&self) -> impl Iterator<Item = (BasisLabel, Complex64)> + '_ {
        self.amplitudes.iter().copied()
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().fold(0.0, |acc, (_, a)| acc + a.norm_sqr())
    }

    pub fn support(&self) -> BTreeSet<BasisLabel> {
        self.amplitudes.iter().map(|&(l, _)| l).collect()
    }

    pub fn support_size(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Elementwise multiplication by a scalar.
    pub fn scaled(&self, factor: Complex64) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|&(l, a)| (l, a * factor))
            .filter(|(_, a)| !is_dust(*a))
            .collect();
        Self { spec: self.spec, amplitudes }
    }

    /// Wave divider: part `i` is `coefficients[i]` times this state.
    pub fn divide(self, coefficients: &[Complex64]) -> Result<SubWaveBundle, WaveError> {
        if coefficients.is_empty() {
            return Err(WaveError::NoCoefficients);
        }
        let sum: Complex64 = coefficients.iter().sum();
        if (sum - Complex64::new(1.0, 0.0)).norm() > NORM_TOLERANCE {
            return Err(WaveError::CoefficientSum);
        }
        let parts = coefficients.iter().map(|&c| self.scaled(c)).collect();
        Ok(SubWaveBundle { parts, coefficients: coefficients.to_vec() })
    }

    /// Two-way divider with amplitude 1/2 on each path.
    pub fn halve(self) -> Result<SubWaveBundle, WaveError> {
        let half = Complex64::new(0.5, 0.0);
        self.divide(&[half, half])
    }

    /// `|i⟩|r⟩ → |i⟩|r ⊕ f(i)⟩`, amplitudes untouched.
    pub fn apply_function(self, oracle: &OracleFn<'_>) -> Result<Self, WaveError> {
        let OracleFn::Function { body, .. } = oracle else {
            return Err(WaveError::OracleKind { expected: OracleKind::Function });
        };
        let spec = self.spec;
        let mut cache: Option<(u64, u64)> = None;
        let mut out = Vec::with_capacity(self.amplitudes.len());
        for (label, amp) in self.amplitudes {
            let value = match cache {
                Some((i, v)) if i == label.reg1 => v,
                _ => {
                    let v = body(label.reg1).ok_or(WaveError::OracleFailed { value: label.reg1 })?;
                    cache = Some((label.reg1, v));
                    v
                }
            };
            let next = BasisLabel::new(label.reg1, label.reg2 ^ value);
            if !spec.contains(next) {
                return Err(WaveError::OutOfRange { label: next });
            }
            out.push((next, amp));
        }
        // XOR with a fixed value per reg1 is a bijection on reg2, so labels stay
        // unique and only their order within one reg1 value can change.
        out.sort_unstable_by_key(|&(l, _)| l);
        Ok(Self { spec, amplitudes: out })
    }

    /// Multiplies each amplitude by the oracle's ±1 for its label.
    pub fn apply_sign(mut self, oracle: &OracleFn<'_>) -> Result<Self, WaveError> {
        let OracleFn::Sign { body, .. } = oracle else {
            return Err(WaveError::OracleKind { expected: OracleKind::Sign });
        };
        for (label, amp) in self.amplitudes.iter_mut() {
            match body(label.reg1, label.reg2) {
                1 => {}
                -1 => *amp = -*amp,
                got => return Err(WaveError::SignOutOfRange { label: *label, got }),
            }
        }
        Ok(self)
    }

    /// Samples one label using a fresh generator seeded with `seed`.
    pub fn readout(&self, seed: u64) -> Readout {
        self.readout_with(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Samples one label with probability `|amp|²/norm²`.
    pub fn readout_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Readout {
        let norm_sq = self.norm_sq();
        if norm_sq <= PRUNE_THRESHOLD {
            return Readout { outcome: None, success_probability: 0.0 };
        }
        let target = rng.random::<f64>() * norm_sq;
        let mut acc = 0.0;
        let mut chosen = None;
        for &(label, amp) in &self.amplitudes {
            acc += amp.norm_sqr();
            chosen = Some(label);
            if target < acc {
                break;
            }
        }
        Readout { outcome: chosen, success_probability: norm_sq.min(1.0) }
    }
}

fn is_dust(a: Complex64) -> bool {
    a.norm() < PRUNE_THRESHOLD
}

/// Sorts, sums duplicate labels and drops dust.
fn normalize_terms(mut terms: Vec<(BasisLabel, Complex64)>) -> Vec<(BasisLabel, Complex64)> {
    terms.sort_by_key(|&(l, _)| l);
    let mut out: Vec<(BasisLabel, Complex64)> = Vec::with_capacity(terms.len());
    for (label, amp) in terms {
        match out.last_mut() {
            Some((last, acc)) if *last == label => *acc += amp,
            _ => out.push((label, amp)),
        }
    }
    out.retain(|(_, a)| !is_dust(*a));
    out
}

/// Merges two sorted term lists, adding amplitudes of shared labels.
fn merge_sum(
    a: Vec<(BasisLabel, Complex64)>,
    b: Vec<(BasisLabel, Complex64)>,
) -> Vec<(BasisLabel, Complex64)> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut a, mut b) = (a.into_iter().peekable(), b.into_iter().peekable());
    loop {
        let next = match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                core::cmp::Ordering::Less => a.next(),
                core::cmp::Ordering::Greater => b.next(),
                core::cmp::Ordering::Equal => {
                    let (label, amp) = a.next().unwrap();
                    let (_, other) = b.next().unwrap();
                    Some((label, amp + other))
                }
            },
            (Some(_), None) => a.next(),
            (None, Some(_)) => b.next(),
            (None, None) => break,
        };
        out.extend(next);
    }
    out
}

/// The sub-waves produced by one divider pass, with their coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SubWaveBundle {
    parts: Vec<DualityState>,
    coefficients: Vec<Complex64>,
}

impl SubWaveBundle {
    /// Assembles a bundle from independently built parts.
    pub fn from_parts(parts: Vec<DualityState>, coefficients: Vec<Complex64>) -> Self {
        Self { parts, coefficients }
    }

    pub fn parts(&self) -> &[DualityState] {
        &self.parts
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Replaces part `index` with `f(part)`.
    pub fn transform_part<F>(&mut self, index: usize, f: F) -> Result<(), WaveError>
    where
        F: FnOnce(DualityState) -> Result<DualityState, WaveError>,
    {
        let slot = self.parts.get_mut(index).ok_or(WaveError::NoSuchPart { index })?;
        let spec = slot.spec;
        let part = core::mem::replace(slot, DualityState::zero(spec));
        *slot = f(part)?;
        Ok(())
    }

    /// Wave combiner: elementwise sum of every part, dust removed.
    pub fn combine(self) -> Result<DualityState, WaveError> {
        let mut parts = self.parts.into_iter();
        let Some(first) = parts.next() else {
            return Err(WaveError::IncompatibleSubWaves);
        };
        let spec = first.spec;
        let mut sum = first.amplitudes;
        for part in parts {
            if part.spec != spec {
                return Err(WaveError::IncompatibleSubWaves);
            }
            sum = merge_sum(sum, part.amplitudes);
        }
        sum.retain(|(_, a)| !is_dust(*a));
        Ok(DualityState { spec, amplitudes: sum })
    }
}
