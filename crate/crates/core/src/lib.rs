//! Censored irregular repetition slotted ALOHA (C-IRSA).
//!
//! Users repeat their packet in randomly chosen slots of a frame, and users
//! whose channel power falls below a censor threshold stay silent for that
//! frame. The base station decodes by SINR-threshold successive interference
//! cancellation. This crate holds the pure, allocation-only part of the
//! toolkit:
//!
//! * [`config`] and [`degree`]: system parameters and repetition-degree
//!   distributions.
//! * [`frame`]: random frame realizations (degrees, access pattern, Rayleigh
//!   gains, censoring) with a reproducible per-frame random stream.
//! * [`decoder`]: the iterative inter-slot SIC decoder and its metrics.
//! * [`theta`] and [`density`]: intra-slot decoding probabilities and the
//!   asymptotic density-evolution analysis.
//! * [`policy`]: the censor-threshold policy and the random-censoring
//!   baseline.
//! * [`oracle`]: a brute-force Monte Carlo estimator of the intra-slot
//!   decoding probability, used to check [`theta`].
//!
//! The crate is `no_std`; file formats, parallel Monte Carlo and the CLI live
//! in the `cirsa` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod config;
pub mod decoder;
pub mod degree;
pub mod density;
mod error;
pub mod frame;
pub(crate) mod math;
pub mod oracle;
pub mod policy;
pub mod theta;

pub use config::SystemConfig;
pub use decoder::{decode_frame, sinr, DecodeOutcome};
pub use degree::DegreeDistribution;
pub use density::{
    de_fixed_point, inflection_load, load_grid, peak_throughput_load, slot_update_f,
    user_update_lambda, DEControls, DEResult, DensityEvolution,
};
pub use error::{Error, Result};
pub use frame::{
    frame_rng, sample_frame, sample_frame_with, users_from_load, Censoring, FrameRealization,
};
pub use oracle::{estimate_theta_r, intra_slot_trial, ThetaEstimate};
pub use policy::{
    active_load_under_policy, censor_threshold, random_censoring_prob, target_load_from_plr,
    PolicyParams, TargetLoad,
};
pub use theta::{theta_r, theta_rk, ThetaTable};
