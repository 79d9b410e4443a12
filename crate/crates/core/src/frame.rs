//! Random frame realizations.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::SystemConfig;
use crate::degree::DegreeDistribution;
use crate::error::{Error, Result};
use crate::math;

/// Number of users for a load `L` over `T` slots, `round(L T)` with ties away
/// from zero.
pub fn users_from_load(load: f64, slots: usize) -> usize {
    math::round(load * slots as f64) as usize
}

/// Random stream for frame `index` of an experiment seeded with `seed`.
///
/// Every frame gets its own ChaCha stream, so frames can be generated in any
/// order or in parallel and still reproduce the sequential result.
pub fn frame_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// How users decide whether to transmit in a frame.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Censoring {
    /// CSI-based: transmit iff `|h|^2 >= nu`.
    Threshold(f64),
    /// Channel-blind: transmit with probability `p_a`, independently per user.
    Random(f64),
}

/// One frame: channel gains `|h_m|^2`, activity flags, repetition degrees and
/// the access pattern, stored column-wise (slots of each user).
#[derive(Debug, Clone, PartialEq)]
pub struct FrameRealization {
    slots: usize,
    gains: Vec<f64>,
    active: Vec<bool>,
    degrees: Vec<u32>,
    // Slots of user m are slot_index[offsets[m]..offsets[m + 1]].
    slot_index: Vec<usize>,
    offsets: Vec<usize>,
}

impl FrameRealization {
    /// Build a frame from explicit parts. `access[m]` lists the slots of user
    /// `m`; they must be distinct and below `slots`.
    pub fn from_parts(
        slots: usize,
        gains: Vec<f64>,
        active: Vec<bool>,
        access: &[Vec<usize>],
    ) -> Result<Self> {
        let users = gains.len();
        if active.len() != users || access.len() != users {
            return Err(Error::InvalidConfig(format!(
                "frame parts disagree on the user count: {} gains, {} flags, {} access columns",
                users,
                active.len(),
                access.len()
            )));
        }
        let mut offsets = Vec::with_capacity(users + 1);
        let mut slot_index = Vec::new();
        let mut degrees = Vec::with_capacity(users);
        offsets.push(0);
        for (m, column) in access.iter().enumerate() {
            for (i, &t) in column.iter().enumerate() {
                if t >= slots {
                    return Err(Error::InvalidConfig(format!(
                        "user {m} uses slot {t} of a {slots}-slot frame"
                    )));
                }
                if column[..i].contains(&t) {
                    return Err(Error::InvalidConfig(format!("user {m} repeats slot {t}")));
                }
            }
            if gains[m] < 0.0 || !gains[m].is_finite() {
                return Err(Error::InvalidConfig(format!(
                    "user {m} has channel gain {}",
                    gains[m]
                )));
            }
            slot_index.extend_from_slice(column);
            offsets.push(slot_index.len());
            degrees.push(column.len() as u32);
        }
        Ok(FrameRealization {
            slots,
            gains,
            active,
            degrees,
            slot_index,
            offsets,
        })
    }

    /// Like [`from_parts`](Self::from_parts) with CSI-based activity
    /// `active[m] = gains[m] >= nu`.
    pub fn with_threshold(
        slots: usize,
        gains: Vec<f64>,
        access: &[Vec<usize>],
        nu: f64,
    ) -> Result<Self> {
        let active = gains.iter().map(|&g| g >= nu).collect();
        Self::from_parts(slots, gains, active, access)
    }

    pub fn users(&self) -> usize {
        self.gains.len()
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    pub fn active(&self) -> &[bool] {
        &self.active
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn active_count(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    /// Slots in which user `m` transmits a replica (if active).
    pub fn user_slots(&self, m: usize) -> &[usize] {
        &self.slot_index[self.offsets[m]..self.offsets[m + 1]]
    }

    /// Entry `g_tm` of the access pattern matrix.
    pub fn access(&self, slot: usize, user: usize) -> bool {
        self.user_slots(user).contains(&slot)
    }

    /// Users of every slot, each list in increasing user index.
    pub fn slot_members(&self) -> Vec<Vec<usize>> {
        let mut members = alloc::vec![Vec::new(); self.slots];
        for m in 0..self.users() {
            for &t in self.user_slots(m) {
                members[t].push(m);
            }
        }
        members
    }
}

/// Sample a frame of `users` users with CSI-based censoring at
/// `cfg.censor_threshold`.
pub fn sample_frame<R: Rng + ?Sized>(
    cfg: &SystemConfig,
    dist: &DegreeDistribution,
    users: usize,
    rng: &mut R,
) -> Result<FrameRealization> {
    sample_frame_with(
        cfg.slots,
        dist,
        users,
        Censoring::Threshold(cfg.censor_threshold),
        rng,
    )
}

/// Sample a frame: per user a degree from `dist`, that many distinct slots
/// chosen uniformly (partial Fisher-Yates), a unit-mean exponential gain, and
/// an activity flag according to `censoring`.
pub fn sample_frame_with<R: Rng + ?Sized>(
    slots: usize,
    dist: &DegreeDistribution,
    users: usize,
    censoring: Censoring,
    rng: &mut R,
) -> Result<FrameRealization> {
    let max_degree = dist.max_degree();
    if max_degree as usize > slots {
        return Err(Error::DegreeExceedsSlots { max_degree, slots });
    }

    // A permutation of the slots. Partial Fisher-Yates draws a uniform subset
    // from any starting permutation, so it is never reset between users.
    let mut pool: Vec<usize> = (0..slots).collect();
    let mut gains = Vec::with_capacity(users);
    let mut active = Vec::with_capacity(users);
    let mut degrees = Vec::with_capacity(users);
    let mut slot_index = Vec::with_capacity(users * max_degree as usize);
    let mut offsets = Vec::with_capacity(users + 1);
    offsets.push(0);

    for _ in 0..users {
        let d = dist.sample(rng) as usize;
        for i in 0..d {
            let j = rng.gen_range(i..slots);
            pool.swap(i, j);
        }
        slot_index.extend_from_slice(&pool[..d]);
        offsets.push(slot_index.len());
        degrees.push(d as u32);

        let u: f64 = rng.gen();
        let gain = -math::ln(1.0 - u);
        gains.push(gain);
        active.push(match censoring {
            Censoring::Threshold(nu) => gain >= nu,
            Censoring::Random(p_a) => rng.gen::<f64>() < p_a,
        });
    }

    Ok(FrameRealization {
        slots,
        gains,
        active,
        degrees,
        slot_index,
        offsets,
    })
}
