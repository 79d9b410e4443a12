//! Asymptotic analysis by density evolution.
//!
//! On the user/slot graph, `q_i` is the probability that a user-to-slot edge
//! still carries an undecoded packet and `p_i` the same for slot-to-user
//! edges. They evolve as
//!
//! ```text
//! q_i = lambda(p_{i-1})
//! p_i = f(q_i) = 1 - exp(-x) sum_{r>=1} theta_r x^(r-1)/(r-1)!,   x = L_a d_bar q_i
//! ```
//!
//! starting from `q_0 = 1`. Both maps are nondecreasing, so the `p_i` decrease
//! monotonically to a fixed point `p_inf`, from which the loss rate of active
//! users is `phi(p_inf)`.

use alloc::vec::Vec;

use crate::degree::DegreeDistribution;
use crate::error::{Error, Result};
use crate::math;
use crate::theta::ThetaTable;

/// Upper end of the bisection bracket for the inflection load.
pub const INFLECTION_BRACKET: f64 = 4.0;
/// Absolute resolution of load bisections.
pub const LOAD_RESOLUTION: f64 = 1e-3;

/// Numerical surrogates for the limits `i -> inf` and `r -> inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct DEControls {
    pub max_iterations: usize,
    /// Stop once `|p_i - p_{i-1}|` drops below this.
    pub convergence_epsilon: f64,
    /// Declare `p_inf = 0` once an iterate drops below this.
    pub zero_plr_delta: f64,
    /// Poisson tail mass left out of the series in `f`.
    pub series_truncation_tail: f64,
}

impl Default for DEControls {
    fn default() -> Self {
        DEControls {
            max_iterations: 100_000,
            convergence_epsilon: 1e-12,
            zero_plr_delta: 1e-8,
            series_truncation_tail: 1e-12,
        }
    }
}

impl DEControls {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if self.max_iterations == 0
            || !positive(self.convergence_epsilon)
            || !positive(self.zero_plr_delta)
            || !positive(self.series_truncation_tail)
        {
            return Err(Error::InvalidConfig(
                "density-evolution controls must all be positive".into(),
            ));
        }
        if self.zero_plr_delta <= self.convergence_epsilon {
            return Err(Error::InvalidConfig(
                "zero_plr_delta must exceed convergence_epsilon".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of density evolution at one `(L_a, nu)` point.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DEResult {
    pub p_infinity: f64,
    pub q_infinity: f64,
    pub iterations: usize,
    pub converged: bool,
    pub plr_a: f64,
    pub plr: f64,
    pub throughput: f64,
    pub active_load: f64,
    pub censor_threshold: f64,
}

impl DEResult {
    /// System load `L = L_a / Pr(|h|^2 >= nu)`.
    pub fn system_load(&self) -> f64 {
        self.active_load / math::exp_ccdf(self.censor_threshold)
    }
}

/// Sum `sum_{r=1}^{r_max} weight(r) Pois(r-1; x)`, with `r_max` the smallest
/// count whose Poisson tail beyond `r_max - 1` is below `tail`. Returns the
/// sum and `r_max`.
pub(crate) fn poisson_series(
    x: f64,
    tail: f64,
    mut weight: impl FnMut(usize) -> f64,
) -> (f64, usize) {
    if x <= 0.0 {
        return (weight(1), 1);
    }
    let ln_x = math::ln(x);
    // Hard stop far beyond the bulk, in case the cdf stalls numerically.
    let cap = (x + 40.0 * math::sqrt(x) + 60.0) as usize;
    let mut ln_pmf = -x;
    let mut cdf = 0.0;
    let mut sum = 0.0;
    let mut j = 0usize;
    loop {
        let pmf = math::exp(ln_pmf);
        cdf += pmf;
        sum += weight(j + 1) * pmf;
        j += 1;
        if (1.0 - cdf < tail && j as f64 > x) || j >= cap {
            return (sum, j);
        }
        ln_pmf += ln_x - math::ln(j as f64);
    }
}

/// One density-evolution problem: a distribution, an active load and a
/// censor threshold.
#[derive(Debug, Clone)]
pub struct DensityEvolution<'a> {
    dist: &'a DegreeDistribution,
    active_load: f64,
    nu: f64,
    mean_degree: f64,
    theta: ThetaTable,
    controls: DEControls,
}

impl<'a> DensityEvolution<'a> {
    pub fn new(
        active_load: f64,
        nu: f64,
        dist: &'a DegreeDistribution,
        snr: f64,
        gamma_th: f64,
        controls: DEControls,
    ) -> Result<Self> {
        controls.validate()?;
        if !(active_load.is_finite() && active_load >= 0.0) {
            return Err(Error::InvalidConfig(alloc::format!(
                "active load {active_load}"
            )));
        }
        let mut theta = ThetaTable::new(nu, snr, gamma_th)?;
        let mean_degree = dist.mean_degree();
        // The truncation point grows with x, and x is largest at q = 1.
        let (_, r_max) = poisson_series(
            active_load * mean_degree,
            controls.series_truncation_tail,
            |_| 0.0,
        );
        theta.extend_to(r_max);
        Ok(DensityEvolution {
            dist,
            active_load,
            nu,
            mean_degree,
            theta,
            controls,
        })
    }

    /// Slot-node update `p = f(q)`.
    pub fn slot_update(&self, q: f64) -> f64 {
        let x = self.active_load * self.mean_degree * q;
        let (decoded, _) = poisson_series(x, self.controls.series_truncation_tail, |r| {
            self.theta.get(r)
        });
        (1.0 - decoded).clamp(0.0, 1.0)
    }

    /// User-node update `q = lambda(p)`.
    pub fn user_update(&self, p: f64) -> f64 {
        self.dist.edge_poly(p).clamp(0.0, 1.0)
    }

    /// The sequence `p_0 = f(1), p_1, p_2, ...`, unbounded.
    pub fn iterates(&self) -> Iterates<'_, 'a> {
        Iterates { de: self, q: 1.0 }
    }

    pub fn run(&self) -> DEResult {
        let c = &self.controls;
        let mut previous = f64::INFINITY;
        let mut p = 1.0;
        let mut iterations = 0;
        let mut converged = false;
        for next in self.iterates().take(c.max_iterations) {
            iterations += 1;
            debug_assert!(
                next <= previous + 1e-12,
                "density evolution must not increase"
            );
            p = next;
            if p < c.zero_plr_delta {
                p = 0.0;
                converged = true;
                break;
            }
            if math::abs(p - previous) < c.convergence_epsilon {
                converged = true;
                break;
            }
            previous = p;
        }

        let plr_a = self.dist.node_poly(p).clamp(0.0, 1.0);
        let kept = math::exp_ccdf(self.nu);
        DEResult {
            p_infinity: p,
            q_infinity: self.user_update(p),
            iterations,
            converged,
            plr_a,
            plr: (1.0 - kept) + kept * plr_a,
            throughput: self.active_load * (1.0 - plr_a),
            active_load: self.active_load,
            censor_threshold: self.nu,
        }
    }
}

pub struct Iterates<'d, 'a> {
    de: &'d DensityEvolution<'a>,
    q: f64,
}

impl Iterator for Iterates<'_, '_> {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let p = self.de.slot_update(self.q);
        self.q = self.de.user_update(p);
        Some(p)
    }
}

/// Slot-node update `f(q)` for a single evaluation.
pub fn slot_update_f(
    q: f64,
    active_load: f64,
    nu: f64,
    snr: f64,
    gamma_th: f64,
    mean_degree: f64,
    controls: &DEControls,
) -> Result<f64> {
    let theta = ThetaTable::new(nu, snr, gamma_th)?;
    let x = active_load * mean_degree * q;
    let (decoded, _) = poisson_series(x, controls.series_truncation_tail, |r| theta.get(r));
    Ok((1.0 - decoded).clamp(0.0, 1.0))
}

/// User-node update `lambda(p)`.
pub fn user_update_lambda(p: f64, dist: &DegreeDistribution) -> f64 {
    dist.edge_poly(p).clamp(0.0, 1.0)
}

pub fn de_fixed_point(
    active_load: f64,
    nu: f64,
    dist: &DegreeDistribution,
    snr: f64,
    gamma_th: f64,
    controls: &DEControls,
) -> Result<DEResult> {
    Ok(DensityEvolution::new(active_load, nu, dist, snr, gamma_th, *controls)?.run())
}

/// Largest active load for which density evolution drives `p` to zero.
///
/// Only defined at `nu = gamma_th / rho0`: below it `theta_1 < 1`, so
/// `f(0) > 0` and no load reaches zero loss.
pub fn inflection_load(
    nu: f64,
    dist: &DegreeDistribution,
    snr: f64,
    gamma_th: f64,
    controls: &DEControls,
) -> Result<f64> {
    let boundary = gamma_th / snr;
    if math::abs(nu - boundary) > 1e-12 * boundary.max(1.0) {
        return Err(Error::InflectionRequiresBoundary { nu, boundary });
    }
    let zero_loss = |load: f64| -> Result<bool> {
        let r = de_fixed_point(load, nu, dist, snr, gamma_th, controls)?;
        Ok(r.converged && r.p_infinity == 0.0)
    };
    let (mut lo, mut hi) = (0.0, INFLECTION_BRACKET);
    if zero_loss(hi)? {
        return Err(Error::NotBracketed { upper: hi });
    }
    while hi - lo > LOAD_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if zero_loss(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// `from, from + step, ..., to` (inclusive, up to rounding of the count).
pub fn load_grid(from: f64, to: f64, step: f64) -> Vec<f64> {
    if step.is_nan() || step <= 0.0 || to < from {
        return Vec::new();
    }
    let n = math::round((to - from) / step) as usize;
    (0..=n).map(|i| from + i as f64 * step).collect()
}

/// Grid point with the largest asymptotic throughput, and that throughput.
pub fn peak_throughput_load(
    nu: f64,
    dist: &DegreeDistribution,
    snr: f64,
    gamma_th: f64,
    controls: &DEControls,
    grid: &[f64],
) -> Result<(f64, f64)> {
    let mut best: Option<(f64, f64)> = None;
    for &load in grid {
        let t = de_fixed_point(load, nu, dist, snr, gamma_th, controls)?.throughput;
        if best.is_none_or(|(_, bt)| t > bt) {
            best = Some((load, t));
        }
    }
    best.ok_or_else(|| Error::InvalidConfig("empty load grid".into()))
}
