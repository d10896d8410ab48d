//! Duality-computer simulation and the factorization algorithms built on it.
//!
//! A duality computer splits its wave into sub-waves with a *divider*, lets
//! each sub-wave pass through its own gate or oracle, and sums the sub-waves
//! again at a *combiner*. Terms carrying opposite signs on the two paths
//! cancel, so a single pass can isolate every basis value an oracle marks.
//!
//! The crate is organised as follows:
//!
//! * [`wave`] holds the sparse two-register state and the primitives
//!   (preparation, divider, function and sign oracles, combiner, readout).
//! * [`arith`] holds the exact integer arithmetic the oracles need.
//! * [`algorithms`] orchestrates the primitives into three factoring
//!   procedures: divisor marking, period finding and Fermat representation.
//! * [`baselines`] holds brute-force classical references used for
//!   comparison and as independent test oracles.
//! * [`trace`] records every primitive application as a [`TraceEvent`].
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algorithms;
pub mod arith;
pub mod baselines;
pub mod trace;
pub mod wave;

pub use algorithms::{
    dc_fermat, dc_shor, naive_factorize, FactorError, FactorOutcome, OutcomeStatus, ShorParams,
};
pub use arith::{ArithError, OddComposite};
pub use baselines::{BaselineError, BaselineReport, BaselineResult, Method};
pub use trace::{OpCounts, PayloadValue, Primitive, TraceEvent};
pub use wave::{
    BasisLabel, DualityState, OracleFn, Readout, RegisterSpec, SubWaveBundle, WaveError,
};
