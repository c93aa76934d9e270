//! Constant-space detection of zombie hosts in software-defined networks.
//!
//! Each switch keeps an [`AmsSketch`] per attached host and estimates the
//! second frequency moment F2 of the host's header stream over tumbling
//! windows of M packets. Hosts that flood the controller with fresh headers
//! have F2 close to M; hosts that reuse a small set of destinations have F2
//! far above it. [`detector::classify`] draws the line with a threshold τ.
//!
//! The crate is `no_std` and needs only `alloc`. The exact
//! [`FrequencyVector`] oracle and the traffic [`simulator`] live here too so
//! that everything downstream is a pure function of a seed.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod detector;
pub mod error;
pub mod frequency;
pub mod hash;
pub mod seed;
pub mod simulator;
pub mod sketch;

/// Packet header, pre-mapped to a 64-bit id.
pub type HeaderId = u64;
/// Opaque host identifier.
pub type HostId = u64;

pub use detector::{
    classify, default_tau_sweep, ConfusionCounts, HostMonitor, Verdict, WindowVerdict,
};
pub use error::{Error, Result};
pub use frequency::FrequencyVector;
pub use hash::SignHash;
pub use simulator::{run_trial, HostProfile, TrialConfig, TrialOutcome};
pub use sketch::{required_depth, AmsSketch};
