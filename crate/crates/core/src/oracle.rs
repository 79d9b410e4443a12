//! Brute-force Monte Carlo estimate of the intra-slot decoding probability.
//!
//! A trial draws `r` channel powers from the exponential truncated to
//! `[nu, inf)`, tags one packet uniformly, and peels the slot: while the
//! strongest remaining packet reaches `gamma_th`, decode and cancel it. This
//! is kept deliberately independent of the closed form in [`crate::theta`].

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::math;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ThetaEstimate {
    pub r: u32,
    pub nu: f64,
    pub snr: f64,
    pub gamma_th: f64,
    pub samples: u64,
    pub successes: u64,
    pub estimate: f64,
    /// `sqrt(theta_hat (1 - theta_hat) / N)`.
    pub std_error: f64,
}

impl ThetaEstimate {
    pub fn from_counts(
        r: u32,
        nu: f64,
        snr: f64,
        gamma_th: f64,
        samples: u64,
        successes: u64,
    ) -> Self {
        let estimate = successes as f64 / samples as f64;
        ThetaEstimate {
            r,
            nu,
            snr,
            gamma_th,
            samples,
            successes,
            estimate,
            std_error: math::sqrt(estimate * (1.0 - estimate) / samples as f64),
        }
    }
}

/// Draw from the unit exponential truncated to `[nu, inf)` by inversion.
pub fn truncated_exponential<R: Rng + ?Sized>(nu: f64, rng: &mut R) -> f64 {
    // 1 - U lies in (0, 1], so the log is finite.
    let u = 1.0 - rng.gen::<f64>();
    nu - math::ln(u)
}

/// Greedy intra-slot SIC over `gains`. Returns the users in decoding order;
/// peeling stops at the first stage where the best SINR misses `gamma_th`.
/// Exact SINR ties go to the lowest index.
pub fn peel_slot(gains: &[f64], snr: f64, gamma_th: f64) -> Vec<usize> {
    let mut remaining: Vec<usize> = (0..gains.len()).collect();
    let mut order = Vec::with_capacity(gains.len());
    while !remaining.is_empty() {
        let total: f64 = remaining.iter().map(|&i| gains[i]).sum();
        let mut best: Option<(usize, f64)> = None;
        for (pos, &i) in remaining.iter().enumerate() {
            let others = (total - gains[i]).max(0.0);
            let sinr = snr * gains[i] / (1.0 + snr * others);
            if best.is_none_or(|(_, s)| sinr > s) {
                best = Some((pos, sinr));
            }
        }
        let (pos, sinr) = best.expect("remaining is non-empty");
        if sinr < gamma_th {
            break;
        }
        order.push(remaining.remove(pos));
    }
    order
}

/// One trial: is a uniformly tagged packet in a degree-`r` slot decoded?
pub fn intra_slot_trial<R: Rng + ?Sized>(
    r: u32,
    nu: f64,
    snr: f64,
    gamma_th: f64,
    rng: &mut R,
) -> bool {
    let gains: Vec<f64> = (0..r).map(|_| truncated_exponential(nu, rng)).collect();
    let tag = rng.gen_range(0..r as usize);
    peel_slot(&gains, snr, gamma_th).contains(&tag)
}

fn check(r: u32, samples: u64) -> Result<()> {
    if r == 0 || samples == 0 {
        return Err(Error::InvalidConfig(
            "oracle needs r >= 1 and at least one sample".into(),
        ));
    }
    Ok(())
}

/// Mean of `samples` independent [`intra_slot_trial`]s.
pub fn estimate_theta_r<R: Rng + ?Sized>(
    r: u32,
    nu: f64,
    snr: f64,
    gamma_th: f64,
    samples: u64,
    rng: &mut R,
) -> Result<ThetaEstimate> {
    check(r, samples)?;
    let successes = (0..samples)
        .filter(|_| intra_slot_trial(r, nu, snr, gamma_th, rng))
        .count() as u64;
    Ok(ThetaEstimate::from_counts(
        r, nu, snr, gamma_th, samples, successes,
    ))
}

/// Estimate of the probability that the first `k` peeling stages of a
/// degree-`r` slot all succeed. The `r` field of the result is `r`.
pub fn estimate_stage_success<R: Rng + ?Sized>(
    r: u32,
    k: u32,
    nu: f64,
    snr: f64,
    gamma_th: f64,
    samples: u64,
    rng: &mut R,
) -> Result<ThetaEstimate> {
    check(r, samples)?;
    let mut gains = alloc::vec![0.0; r as usize];
    let successes = (0..samples)
        .filter(|_| {
            gains
                .iter_mut()
                .for_each(|g| *g = truncated_exponential(nu, rng));
            peel_slot(&gains, snr, gamma_th).len() >= k as usize
        })
        .count() as u64;
    Ok(ThetaEstimate::from_counts(
        r, nu, snr, gamma_th, samples, successes,
    ))
}
