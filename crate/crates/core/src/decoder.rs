//! Iterative SINR-threshold decoder with inter-slot SIC.
//!
//! Each iteration sweeps the slots in index order and, inside a slot, the
//! not-yet-decoded users in index order. A user whose SINR reaches
//! `gamma_th` is decoded at once and its replicas are cancelled from all of
//! its slots before the sweep continues. Decoding stops after `max_iterations`
//! or after an iteration that decodes nobody.
//!
//! Removing an interferer never lowers anyone's SINR, so the set of decoded
//! users does not depend on the processing order.

use alloc::vec;
use alloc::vec::Vec;

use crate::config::SystemConfig;
use crate::frame::FrameRealization;

/// Result of decoding one frame.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DecodeOutcome {
    /// Decoded users, in decoding order.
    pub decoded: Vec<usize>,
    /// Users never decoded (including censored ones), increasing.
    pub undecoded: Vec<usize>,
    pub iterations_used: usize,
    pub per_iteration_decodes: Vec<usize>,
    pub users: usize,
    pub slots: usize,
    pub active_count: usize,
    /// `|undecoded| / M`; 0 for an empty frame.
    pub plr: f64,
    /// `|active ∩ undecoded| / M_a`; 0 with `active_count = 0` when nobody
    /// transmitted.
    pub plr_a: f64,
    /// Decoded packets per slot, `|decoded| / T`.
    pub throughput: f64,
}

impl DecodeOutcome {
    /// Active users that were not decoded.
    pub fn undecoded_active(&self) -> usize {
        self.undecoded.len() - (self.users - self.active_count)
    }
}

/// SINR of `user` in `slot` against the users flagged in `remaining`.
///
/// Evaluates `rho0 a_m g_tm |h_m|^2 / (1 + sum rho0 a_i g_ti |h_i|^2)` with the
/// sum over the other remaining users; zero for inactive users or users
/// absent from the slot.
pub fn sinr(
    frame: &FrameRealization,
    remaining: &[bool],
    slot: usize,
    user: usize,
    snr: f64,
) -> f64 {
    let received = |m: usize| {
        if frame.active()[m] && frame.access(slot, m) {
            snr * frame.gains()[m]
        } else {
            0.0
        }
    };
    let signal = received(user);
    if signal == 0.0 {
        return 0.0;
    }
    let interference: f64 = (0..frame.users())
        .filter(|&i| i != user && remaining[i])
        .map(received)
        .sum();
    signal / (1.0 + interference)
}

pub fn decode_frame(cfg: &SystemConfig, frame: &FrameRealization) -> DecodeOutcome {
    debug_assert_eq!(
        cfg.slots,
        frame.slots(),
        "frame was sampled for a different slot count"
    );
    let users = frame.users();
    let slots = frame.slots();
    let members = frame.slot_members();
    let power: Vec<f64> = frame
        .gains()
        .iter()
        .zip(frame.active())
        .map(|(&g, &a)| if a { cfg.snr * g } else { 0.0 })
        .collect();

    let mut remaining = vec![true; users];
    let mut decoded = Vec::new();
    let mut per_iteration_decodes = Vec::new();
    let mut interference = vec![0.0; slots];

    for _ in 0..cfg.max_iterations {
        // Fresh sums each iteration; within an iteration they are updated
        // by subtraction on every cancellation.
        interference.iter_mut().for_each(|s| *s = 0.0);
        for m in (0..users).filter(|&m| remaining[m] && power[m] > 0.0) {
            for &t in frame.user_slots(m) {
                interference[t] += power[m];
            }
        }

        let mut decoded_now = 0;
        for t in 0..slots {
            for &m in &members[t] {
                if !remaining[m] || power[m] == 0.0 {
                    continue;
                }
                let others = (interference[t] - power[m]).max(0.0);
                if power[m] / (1.0 + others) >= cfg.gamma_th {
                    remaining[m] = false;
                    decoded.push(m);
                    decoded_now += 1;
                    for &u in frame.user_slots(m) {
                        interference[u] -= power[m];
                    }
                }
            }
        }
        per_iteration_decodes.push(decoded_now);
        if decoded_now == 0 {
            break;
        }
    }

    let undecoded: Vec<usize> = (0..users).filter(|&m| remaining[m]).collect();
    let active_count = frame.active_count();
    let censored = users - active_count;
    let plr = if users == 0 {
        0.0
    } else {
        undecoded.len() as f64 / users as f64
    };
    let plr_a = if active_count == 0 {
        0.0
    } else {
        (undecoded.len() - censored) as f64 / active_count as f64
    };
    DecodeOutcome {
        throughput: decoded.len() as f64 / slots as f64,
        iterations_used: per_iteration_decodes.len(),
        decoded,
        undecoded,
        per_iteration_decodes,
        users,
        slots,
        active_count,
        plr,
        plr_a,
    }
}
