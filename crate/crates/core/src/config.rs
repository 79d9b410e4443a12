//! System parameters shared by the simulator and the analysis.

use alloc::format;

use crate::error::{Error, Result};

/// Default cap on decoder iterations; decoding normally stops much earlier.
pub const DEFAULT_MAX_ITERATIONS: usize = 50;

/// Parameters of one C-IRSA operating point.
///
/// All powers are linear. `snr` is the per-user SNR `rho0` in the absence of
/// collisions, `gamma_th` the SINR decoding threshold, `load` the number of
/// users per slot and `censor_threshold` the channel power `nu` below which a
/// user stays silent.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SystemConfig {
    pub snr: f64,
    pub gamma_th: f64,
    pub slots: usize,
    pub load: f64,
    pub censor_threshold: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        SystemConfig {
            snr: 10.0,
            gamma_th: 10.0,
            slots: 250,
            load: 1.0,
            censor_threshold: 1.0,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            seed: 0,
        }
    }
}

impl SystemConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.into()));
        if !(self.snr.is_finite() && self.snr > 0.0) {
            return bad("snr must be finite and positive");
        }
        if !(self.gamma_th.is_finite() && self.gamma_th >= 1.0) {
            return bad("gamma_th must be finite and at least 1");
        }
        if self.slots == 0 {
            return bad("slots must be at least 1");
        }
        if !(self.load.is_finite() && self.load >= 0.0) {
            return bad("load must be finite and non-negative");
        }
        if !(self.censor_threshold.is_finite() && self.censor_threshold >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "censor threshold must be finite and non-negative (got {})",
                self.censor_threshold
            )));
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be at least 1");
        }
        Ok(())
    }

    /// `gamma_th / snr`: the smallest channel power a user needs to be
    /// decoded when it is alone in a slot.
    pub fn decodability_boundary(&self) -> f64 {
        self.gamma_th / self.snr
    }
}

/// Convert an SNR in dB to a linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}
