//! Censor-threshold policy.
//!
//! With CSI-based censoring the active load is `L_a = L exp(-nu)`. Below a
//! target load the threshold sits at the decodability boundary
//! `gamma_th/rho0`; above it the threshold grows as `log(L/L_tgt)` so that the
//! active load stays pinned at `L_tgt exp(-gamma_th/rho0)`.

use crate::degree::DegreeDistribution;
use crate::density::{de_fixed_point, DEControls, INFLECTION_BRACKET, LOAD_RESOLUTION};
use crate::error::{Error, Result};
use crate::math;

/// Default back-off applied to a density-evolution target load before it is
/// used on finite frames.
pub const DEFAULT_BACKOFF: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PolicyParams {
    pub target_load: f64,
    pub target_plr_a: f64,
    pub backoff_fraction: f64,
}

impl PolicyParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_load.is_finite() && self.target_load > 0.0) {
            return Err(Error::InvalidConfig("target load must be positive".into()));
        }
        if !(self.target_plr_a > 0.0 && self.target_plr_a < 1.0) {
            return Err(Error::InvalidConfig(
                "target active PLR must lie in (0, 1)".into(),
            ));
        }
        if !(0.0..=0.5).contains(&self.backoff_fraction) {
            return Err(Error::InvalidConfig(
                "backoff fraction must lie in [0, 0.5]".into(),
            ));
        }
        Ok(())
    }
}

/// `g(L, L_tgt)`.
pub fn censor_threshold(load: f64, target_load: f64, snr: f64, gamma_th: f64) -> f64 {
    let boundary = gamma_th / snr;
    if load < target_load {
        boundary
    } else {
        math::ln(load / target_load) + boundary
    }
}

/// Active load `L exp(-g(L, L_tgt))`. Above the knee this is exactly
/// `L_tgt exp(-gamma_th/rho0)`.
pub fn active_load_under_policy(load: f64, target_load: f64, snr: f64, gamma_th: f64) -> f64 {
    let kept = math::exp(-gamma_th / snr);
    if load < target_load {
        load * kept
    } else {
        target_load * kept
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TargetLoad {
    /// Largest load meeting the loss budget, to [`LOAD_RESOLUTION`].
    pub raw: f64,
    /// `raw * (1 - backoff)`.
    pub backed_off: f64,
}

/// Target load from an active-PLR budget.
///
/// Bisects on the system load `L` with `nu = gamma_th/rho0` for the boundary
/// where the asymptotic active PLR crosses `target_plr_a`.
pub fn target_load_from_plr(
    target_plr_a: f64,
    dist: &DegreeDistribution,
    snr: f64,
    gamma_th: f64,
    controls: &DEControls,
    backoff: f64,
) -> Result<TargetLoad> {
    if !(target_plr_a > 0.0 && target_plr_a < 1.0) {
        return Err(Error::InvalidConfig(
            "target active PLR must lie in (0, 1)".into(),
        ));
    }
    if !(0.0..=0.5).contains(&backoff) {
        return Err(Error::InvalidConfig(
            "backoff fraction must lie in [0, 0.5]".into(),
        ));
    }
    let nu = gamma_th / snr;
    let kept = math::exp(-nu);
    let within_budget = |load: f64| -> Result<bool> {
        Ok(de_fixed_point(load * kept, nu, dist, snr, gamma_th, controls)?.plr_a <= target_plr_a)
    };
    let (mut lo, mut hi) = (0.0, INFLECTION_BRACKET / kept);
    if within_budget(hi)? {
        return Err(Error::NotBracketed { upper: hi });
    }
    while hi - lo > LOAD_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if within_budget(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(TargetLoad {
        raw: lo,
        backed_off: lo * (1.0 - backoff),
    })
}

/// Transmit probability for channel-blind censoring that caps the active
/// load at `la_star`: `min(1, la_star / L)`.
pub fn random_censoring_prob(load: f64, la_star: f64) -> f64 {
    if load <= la_star {
        1.0
    } else {
        la_star / load
    }
}
