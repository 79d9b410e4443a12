use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// How a sweep point was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Monte Carlo with CSI-based censoring.
    Empirical,
    /// Density evolution.
    De,
    /// Monte Carlo with channel-blind random censoring.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolicyKind {
    #[serde(rename = "fixed")]
    Fixed,
    #[serde(rename = "g-policy")]
    GPolicy,
    #[serde(rename = "random")]
    Random,
}

macro_rules! text_enum {
    ($ty:ty { $($variant:path => $text:literal),* $(,)? }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($variant => $text),* })
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self, Error> {
                match s {
                    $($text => Ok($variant),)*
                    other => Err(Error::Format(format!("unknown {} `{other}`", stringify!($ty)))),
                }
            }
        }
    };
}

text_enum!(Mode { Mode::Empirical => "empirical", Mode::De => "de", Mode::Random => "random" });
text_enum!(PolicyKind { PolicyKind::Fixed => "fixed", PolicyKind::GPolicy => "g-policy", PolicyKind::Random => "random" });

/// One row of figure data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub mode: Mode,
    #[serde(rename = "L")]
    pub load: f64,
    #[serde(rename = "L_a")]
    pub active_load: f64,
    pub nu: f64,
    pub policy: PolicyKind,
    #[serde(rename = "L_tgt")]
    pub target_load: Option<f64>,
    #[serde(rename = "T")]
    pub slots: usize,
    pub runs: u64,
    pub plr: f64,
    pub plr_a: f64,
    pub throughput: f64,
    pub ci_halfwidth: f64,
    pub seed: u64,
}

pub const CSV_HEADER: [&str; 13] = [
    "mode",
    "L",
    "L_a",
    "nu",
    "policy",
    "L_tgt",
    "T",
    "runs",
    "plr",
    "plr_a",
    "throughput",
    "ci_halfwidth",
    "seed",
];
