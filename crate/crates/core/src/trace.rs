//! Per-primitive trace events and operation tallies.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::wave::{DualityState, SubWaveBundle};

/// The duality-computer primitives that are counted and traced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Primitive {
    Init,
    Divide,
    ApplyFunction,
    ApplySign,
    Combine,
    Readout,
}

impl Primitive {
    pub const ALL: [Primitive; 6] = [
        Primitive::Init,
        Primitive::Divide,
        Primitive::ApplyFunction,
        Primitive::ApplySign,
        Primitive::Combine,
        Primitive::Readout,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Primitive::Init => "init",
            Primitive::Divide => "divide",
            Primitive::ApplyFunction => "apply_function",
            Primitive::ApplySign => "apply_sign",
            Primitive::Combine => "combine",
            Primitive::Readout => "readout",
        }
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(untagged))]
pub enum PayloadValue {
    Int(u64),
    Float(f64),
    Text(String),
}

impl From<u64> for PayloadValue {
    fn from(v: u64) -> Self {
        PayloadValue::Int(v)
    }
}

impl From<f64> for PayloadValue {
    fn from(v: f64) -> Self {
        PayloadValue::Float(v)
    }
}

impl From<&str> for PayloadValue {
    fn from(v: &str) -> Self {
        PayloadValue::Text(v.into())
    }
}

/// One step of wave evolution.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct TraceEvent {
    pub step_index: u64,
    pub op: Primitive,
    pub label: String,
    pub norm_sq: f64,
    pub support_size: u64,
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub payload: Option<BTreeMap<String, PayloadValue>>,
}

/// Primitive application counts, keyed by primitive.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct OpCounts(BTreeMap<Primitive, u64>);

impl OpCounts {
    pub fn get(&self, op: Primitive) -> u64 {
        self.0.get(&op).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Primitive, u64)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub(crate) fn bump(&mut self, op: Primitive) {
        *self.0.entry(op).or_insert(0) += 1;
    }
}

/// Collects trace events and op counts while an algorithm runs.
#[derive(Debug, Default)]
pub(crate) struct Recorder {
    events: Vec<TraceEvent>,
    counts: OpCounts,
}

pub(crate) type Payload = Vec<(&'static str, PayloadValue)>;

impl Recorder {
    pub fn state(&mut self, op: Primitive, label: String, state: &DualityState, payload: Payload) {
        self.push(op, label, state.norm_sq(), state.support_size() as u64, payload);
    }

    pub fn bundle(&mut self, label: String, bundle: &SubWaveBundle, payload: Payload) {
        let norm_sq = bundle.parts().iter().map(DualityState::norm_sq).sum();
        let support = bundle.parts().iter().map(|p| p.support_size() as u64).sum();
        self.push(Primitive::Divide, label, norm_sq, support, payload);
    }

    fn push(&mut self, op: Primitive, label: String, norm_sq: f64, support: u64, payload: Payload) {
        self.counts.bump(op);
        let payload = if payload.is_empty() {
            None
        } else {
            Some(payload.into_iter().map(|(k, v)| (k.into(), v)).collect())
        };
        self.events.push(TraceEvent {
            step_index: self.events.len() as u64,
            op,
            label,
            norm_sq,
            support_size: support,
            payload,
        });
    }

    pub fn finish(self) -> (Vec<TraceEvent>, OpCounts) {
        (self.events, self.counts)
    }
}
