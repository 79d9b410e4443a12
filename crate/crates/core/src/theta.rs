//! Probability that a tagged packet is decoded by intra-slot SIC alone.
//!
//! Consider one slot holding `r` uncensored packets whose channel powers are
//! i.i.d. exponential truncated to `[nu, inf)`. The slot is peeled greedily:
//! the strongest packet is decoded if its SINR reaches `gamma_th`, cancelled,
//! and so on. With `gamma_th >= 1` at most one packet can clear the threshold
//! per stage. `theta_rk` is the probability that the first `k` stages all
//! succeed and `theta_r = (1/r) sum_k theta_rk` is the probability that a
//! packet tagged uniformly at random is decoded.
//!
//! For a fixed labelling of the `k` packets decoded first, the nested
//! integrals evaluate to
//!
//! ```text
//! exp(r nu - (r-k) nu G_k - (G_k - 1)/rho0) / G_k^(r - (k+1)/2),  G_k = (1 + gamma_th)^k
//! ```
//!
//! and there are `r!/(r-k)!` such labellings. Both the labelling count and the
//! exponent are handled in the log domain; terms that underflow are exact
//! zeros. The closed form needs `nu <= gamma_th / rho0`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Relative slack on `nu <= gamma_th/rho0`, for thresholds that went through
/// a dB round trip.
const BOUNDARY_SLACK: f64 = 1e-12;

fn check_threshold(nu: f64, snr: f64, gamma_th: f64) -> Result<()> {
    let limit = gamma_th / snr;
    if nu.is_nan() || nu < 0.0 || nu > limit * (1.0 + BOUNDARY_SLACK) {
        return Err(Error::ThresholdOutOfRange { nu, limit });
    }
    Ok(())
}

fn ln_falling_factorial(r: u32, k: u32) -> f64 {
    ((r - k + 1)..=r).map(|j| math::ln(j as f64)).sum()
}

fn theta_rk_unchecked(r: u32, k: u32, nu: f64, snr: f64, gamma_th: f64) -> f64 {
    let ln_growth = math::ln(1.0 + gamma_th);
    // Repeated multiplication keeps integer powers exact.
    let gamma_bar = (0..k).fold(1.0, |acc, _| acc * (1.0 + gamma_th));
    if !gamma_bar.is_finite() {
        return 0.0;
    }
    let mut log_term = ln_falling_factorial(r, k) + r as f64 * nu
        - (gamma_bar - 1.0) / snr
        - (r as f64 - (k as f64 + 1.0) / 2.0) * k as f64 * ln_growth;
    if r > k && nu > 0.0 {
        log_term -= (r - k) as f64 * nu * gamma_bar;
    }
    if log_term == f64::NEG_INFINITY || log_term.is_nan() {
        return 0.0;
    }
    math::exp(log_term).clamp(0.0, 1.0)
}

/// Probability that the first `k` intra-slot SIC stages of a degree-`r` slot
/// all succeed.
pub fn theta_rk(r: u32, k: u32, nu: f64, snr: f64, gamma_th: f64) -> Result<f64> {
    if k == 0 || k > r {
        return Err(Error::InvalidConfig(alloc::format!(
            "need 1 <= k <= r, got k = {k}, r = {r}"
        )));
    }
    check_threshold(nu, snr, gamma_th)?;
    Ok(theta_rk_unchecked(r, k, nu, snr, gamma_th))
}

/// Probability that a reference packet in a slot of degree `r` is decoded
/// using only intra-slot SIC.
pub fn theta_r(r: u32, nu: f64, snr: f64, gamma_th: f64) -> Result<f64> {
    if r == 0 {
        return Err(Error::InvalidConfig(
            "slot degree must be at least 1".into(),
        ));
    }
    check_threshold(nu, snr, gamma_th)?;
    Ok(theta_r_unchecked(r, nu, snr, gamma_th))
}

fn theta_r_unchecked(r: u32, nu: f64, snr: f64, gamma_th: f64) -> f64 {
    let total: f64 = (1..=r)
        .map(|k| theta_rk_unchecked(r, k, nu, snr, gamma_th))
        .sum();
    (total / r as f64).clamp(0.0, 1.0)
}

/// `theta_1, theta_2, ...` for one `(nu, rho0, gamma_th)`, cached.
#[derive(Debug, Clone)]
pub struct ThetaTable {
    nu: f64,
    snr: f64,
    gamma_th: f64,
    values: Vec<f64>,
}

impl ThetaTable {
    pub fn new(nu: f64, snr: f64, gamma_th: f64) -> Result<Self> {
        check_threshold(nu, snr, gamma_th)?;
        Ok(ThetaTable {
            nu,
            snr,
            gamma_th,
            values: Vec::new(),
        })
    }

    /// Make sure `theta_1..=theta_n` are cached.
    pub fn extend_to(&mut self, n: usize) {
        while self.values.len() < n {
            let r = self.values.len() as u32 + 1;
            self.values
                .push(theta_r_unchecked(r, self.nu, self.snr, self.gamma_th));
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `theta_r`; computed directly if `r` is beyond the cached range.
    pub fn get(&self, r: usize) -> f64 {
        match self.values.get(r - 1) {
            Some(&v) => v,
            None => theta_r_unchecked(r as u32, self.nu, self.snr, self.gamma_th),
        }
    }
}
