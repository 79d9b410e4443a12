//! Parallel Monte Carlo over independent frames.
//!
//! Frame `i` draws from its own stream `frame_rng(seed, i)` and the per-frame
//! results are reduced in frame order, so the output does not depend on the
//! number of worker threads.

use cirsa_core::frame::{frame_rng, sample_frame_with, Censoring};
use cirsa_core::oracle::{intra_slot_trial, ThetaEstimate};
use cirsa_core::{decode_frame, users_from_load, DegreeDistribution, SystemConfig};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::record::{Mode, PolicyKind, SweepRecord};

/// 95% two-sided normal quantile.
const Z95: f64 = 1.959963984540054;

/// Oracle trials per independent random stream.
const ORACLE_CHUNK: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub runs: u64,
    pub users: usize,
    /// Mean PLR over frames.
    pub plr: f64,
    /// Undecoded active users over active users, pooled across frames (a
    /// frame-mean weighted by active count).
    pub plr_a: f64,
    pub throughput: f64,
    /// Half-width of the 95% normal-approximation interval on throughput.
    pub ci_halfwidth: f64,
    /// Mean fraction of users that transmitted.
    pub active_fraction: f64,
}

struct FrameStats {
    plr: f64,
    throughput: f64,
    active: usize,
    undecoded_active: usize,
}

/// Simulate `runs` frames at `cfg.load` with the given censoring rule.
pub fn simulate(
    cfg: &SystemConfig,
    dist: &DegreeDistribution,
    runs: u64,
    censoring: Censoring,
) -> Result<Summary> {
    cfg.validate()?;
    if runs == 0 {
        return Err(Error::Usage("runs must be at least 1".into()));
    }
    if dist.max_degree() as usize > cfg.slots {
        return Err(cirsa_core::Error::DegreeExceedsSlots {
            max_degree: dist.max_degree(),
            slots: cfg.slots,
        }
        .into());
    }
    let users = users_from_load(cfg.load, cfg.slots);

    let frames: Vec<FrameStats> = (0..runs)
        .into_par_iter()
        .map(|i| {
            let frame = sample_frame_with(
                cfg.slots,
                dist,
                users,
                censoring,
                &mut frame_rng(cfg.seed, i),
            )?;
            let out = decode_frame(cfg, &frame);
            Ok(FrameStats {
                plr: out.plr,
                throughput: out.throughput,
                active: out.active_count,
                undecoded_active: out.undecoded_active(),
            })
        })
        .collect::<std::result::Result<_, cirsa_core::Error>>()?;

    let n = runs as f64;
    let mut plr = 0.0;
    let mut throughput = 0.0;
    let mut active = 0usize;
    let mut undecoded_active = 0usize;
    for f in &frames {
        plr += f.plr;
        throughput += f.throughput;
        active += f.active;
        undecoded_active += f.undecoded_active;
    }
    let mean_throughput = throughput / n;
    let ci_halfwidth = if runs > 1 {
        let var = frames
            .iter()
            .map(|f| (f.throughput - mean_throughput).powi(2))
            .sum::<f64>()
            / (n - 1.0);
        Z95 * (var / n).sqrt()
    } else {
        0.0
    };
    Ok(Summary {
        runs,
        users,
        plr: plr / n,
        plr_a: if active == 0 {
            0.0
        } else {
            undecoded_active as f64 / active as f64
        },
        throughput: mean_throughput,
        ci_halfwidth,
        active_fraction: if users == 0 {
            0.0
        } else {
            active as f64 / (n * users as f64)
        },
    })
}

/// Monte Carlo at a fixed CSI threshold `cfg.censor_threshold`.
pub fn run_monte_carlo(
    cfg: &SystemConfig,
    dist: &DegreeDistribution,
    runs: u64,
) -> Result<SweepRecord> {
    let s = simulate(cfg, dist, runs, Censoring::Threshold(cfg.censor_threshold))?;
    Ok(SweepRecord {
        mode: Mode::Empirical,
        load: cfg.load,
        active_load: cfg.load * (-cfg.censor_threshold).exp(),
        nu: cfg.censor_threshold,
        policy: PolicyKind::Fixed,
        target_load: None,
        slots: cfg.slots,
        runs,
        plr: s.plr,
        plr_a: s.plr_a,
        throughput: s.throughput,
        ci_halfwidth: s.ci_halfwidth,
        seed: cfg.seed,
    })
}

/// [`cirsa_core::estimate_theta_r`] split over fixed-size chunks, each with
/// its own stream, so the estimate is the same for any thread count.
pub fn estimate_theta_parallel(
    r: u32,
    nu: f64,
    snr: f64,
    gamma_th: f64,
    samples: u64,
    seed: u64,
) -> Result<ThetaEstimate> {
    if r == 0 || samples == 0 {
        return Err(Error::Usage(
            "oracle needs r >= 1 and at least one sample".into(),
        ));
    }
    let chunks = samples.div_ceil(ORACLE_CHUNK);
    let successes: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let n = ORACLE_CHUNK.min(samples - c * ORACLE_CHUNK);
            let mut rng = frame_rng(seed, c);
            (0..n)
                .filter(|_| intra_slot_trial(r, nu, snr, gamma_th, &mut rng))
                .count() as u64
        })
        .sum();
    Ok(ThetaEstimate::from_counts(
        r, nu, snr, gamma_th, samples, successes,
    ))
}
