//! One-dimensional parameter sweeps.

use cirsa_core::frame::Censoring;
use cirsa_core::{
    active_load_under_policy, censor_threshold, de_fixed_point, random_censoring_prob, DEControls,
    DegreeDistribution, SystemConfig,
};

use crate::error::{Error, Result};
use crate::montecarlo::simulate;
use crate::record::{Mode, PolicyKind, SweepRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// System load `L`.
    Load,
    /// Active load `L_a`.
    ActiveLoad,
    /// Censor threshold `nu`.
    Nu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    Empirical,
    De,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolicySpec {
    /// `nu` from the base configuration (or the grid, on the `nu` axis).
    Fixed,
    /// `nu = g(L, L_tgt)`.
    G { target_load: f64 },
    /// Channel-blind censoring with `p_a = min(1, la_star / L)`. On the
    /// `L_a` axis the grid value plays the role of `la_star` and the load is
    /// the base load.
    Random { la_star: f64 },
}

/// A record, plus the error that prevented evaluating it, if any. Flagged
/// points carry NaN metrics.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub record: SweepRecord,
    pub flag: Option<cirsa_core::Error>,
}

struct Operating {
    load: f64,
    active_load: f64,
    nu: f64,
    censoring: Censoring,
}

fn operating_point(
    axis: Axis,
    x: f64,
    base: &SystemConfig,
    policy: PolicySpec,
) -> Result<Operating> {
    let (snr, gamma) = (base.snr, base.gamma_th);
    let threshold = |load: f64, nu: f64| Operating {
        load,
        active_load: load * (-nu).exp(),
        nu,
        censoring: Censoring::Threshold(nu),
    };
    let random = |load: f64, la_star: f64| {
        let p_a = random_censoring_prob(load, la_star);
        Operating {
            load,
            active_load: load * p_a,
            nu: 0.0,
            censoring: Censoring::Random(p_a),
        }
    };
    Ok(match (axis, policy) {
        (Axis::Load, PolicySpec::Fixed) => threshold(x, base.censor_threshold),
        (Axis::Load, PolicySpec::G { target_load }) => Operating {
            load: x,
            active_load: active_load_under_policy(x, target_load, snr, gamma),
            nu: censor_threshold(x, target_load, snr, gamma),
            censoring: Censoring::Threshold(censor_threshold(x, target_load, snr, gamma)),
        },
        (Axis::Load, PolicySpec::Random { la_star }) => random(x, la_star),
        (Axis::ActiveLoad, PolicySpec::Fixed) => {
            threshold(x * base.censor_threshold.exp(), base.censor_threshold)
        }
        (Axis::ActiveLoad, PolicySpec::Random { .. }) => {
            if x > base.load {
                return Err(Error::Usage(format!(
                    "active load {x} exceeds the base load {}",
                    base.load
                )));
            }
            random(base.load, x)
        }
        (Axis::Nu, PolicySpec::Fixed) => threshold(base.load, x),
        (axis, policy) => {
            return Err(Error::Usage(format!(
                "policy {policy:?} cannot be swept along {axis:?}"
            )));
        }
    })
}

/// Evaluate every grid point. Density-evolution points that fall outside the
/// closed form's range are flagged and the sweep continues.
#[allow(clippy::too_many_arguments)]
pub fn sweep(
    axis: Axis,
    grid: &[f64],
    base: &SystemConfig,
    dist: &DegreeDistribution,
    policy: PolicySpec,
    mode: SweepMode,
    runs: u64,
    controls: &DEControls,
) -> Result<Vec<SweepPoint>> {
    if grid.is_empty() {
        return Err(Error::Usage("sweep grid is empty".into()));
    }
    base.validate()?;
    let points: Vec<Operating> = grid
        .iter()
        .map(|&x| operating_point(axis, x, base, policy))
        .collect::<Result<_>>()?;

    let policy_kind = match policy {
        PolicySpec::Fixed => PolicyKind::Fixed,
        PolicySpec::G { .. } => PolicyKind::GPolicy,
        PolicySpec::Random { .. } => PolicyKind::Random,
    };
    let target_load = match policy {
        PolicySpec::G { target_load } => Some(target_load),
        _ => None,
    };

    let mut out = Vec::with_capacity(points.len());
    for op in points {
        let mut record = SweepRecord {
            mode: Mode::De,
            load: op.load,
            active_load: op.active_load,
            nu: op.nu,
            policy: policy_kind,
            target_load,
            slots: base.slots,
            runs: 0,
            plr: f64::NAN,
            plr_a: f64::NAN,
            throughput: f64::NAN,
            ci_halfwidth: 0.0,
            seed: base.seed,
        };
        let mut flag = None;
        match mode {
            SweepMode::Empirical => {
                let cfg = SystemConfig {
                    load: op.load,
                    censor_threshold: op.nu,
                    ..*base
                };
                let s = simulate(&cfg, dist, runs, op.censoring)?;
                record.mode = match op.censoring {
                    Censoring::Threshold(_) => Mode::Empirical,
                    Censoring::Random(_) => Mode::Random,
                };
                record.runs = runs;
                record.plr = s.plr;
                record.plr_a = s.plr_a;
                record.throughput = s.throughput;
                record.ci_halfwidth = s.ci_halfwidth;
            }
            SweepMode::De => {
                // Random censoring thins users independently of the channel,
                // which is plain IRSA (nu = 0) at the thinned load.
                match de_fixed_point(
                    op.active_load,
                    op.nu,
                    dist,
                    base.snr,
                    base.gamma_th,
                    controls,
                ) {
                    Ok(r) => {
                        let kept = op.active_load / op.load.max(f64::MIN_POSITIVE);
                        record.plr_a = r.plr_a;
                        record.throughput = r.throughput;
                        record.plr = match op.censoring {
                            Censoring::Threshold(_) => r.plr,
                            Censoring::Random(_) if op.load > 0.0 => 1.0 - kept * (1.0 - r.plr_a),
                            Censoring::Random(_) => r.plr_a,
                        };
                    }
                    Err(e) => flag = Some(e),
                }
            }
        }
        out.push(SweepPoint { record, flag });
    }
    Ok(out)
}
