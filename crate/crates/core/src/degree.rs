//! Repetition-degree distributions.
//!
//! A distribution is given from the node perspective: `phi_d` is the
//! probability that a user sends `d` replicas, `2 <= d <= d_max`. The edge
//! perspective `lambda_d = d phi_d / phi'(1)` is the probability that a random
//! edge of the user/slot graph hangs off a degree-`d` user.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::math;

/// Tolerance on `sum(phi_d) = 1`.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// `0.625 x^2 + 0.25 x^3 + 0.125 x^4`, the truncated Soliton used throughout
/// the reference experiments.
pub const SOLITON_4: &str = "2:0.625,3:0.25,4:0.125";

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    // Sorted by degree, degrees unique.
    probs: Vec<(u32, f64)>,
}

impl DegreeDistribution {
    pub fn new(pairs: impl IntoIterator<Item = (u32, f64)>) -> Result<Self> {
        let mut probs: Vec<(u32, f64)> = pairs.into_iter().collect();
        probs.sort_by_key(|&(d, _)| d);
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("no degrees given".into()));
        }
        for w in probs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidDistribution(format!(
                    "degree {} listed twice",
                    w[0].0
                )));
            }
        }
        for &(d, p) in &probs {
            if d < 2 {
                return Err(Error::InvalidDistribution(format!(
                    "degree {d} is below the minimum of 2"
                )));
            }
            if !(p.is_finite() && p >= 0.0) {
                return Err(Error::InvalidDistribution(format!(
                    "probability {p} for degree {d}"
                )));
            }
        }
        let total: f64 = probs.iter().map(|&(_, p)| p).sum();
        if math::abs(total - 1.0) > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(DegreeDistribution { probs })
    }

    pub fn soliton4() -> Self {
        SOLITON_4.parse().expect("built-in distribution is valid")
    }

    /// `(d, phi_d)` pairs in increasing degree order.
    pub fn probs(&self) -> &[(u32, f64)] {
        &self.probs
    }

    pub fn max_degree(&self) -> u32 {
        self.probs.last().map(|&(d, _)| d).unwrap_or(0)
    }

    /// Average repetition factor `d_bar = phi'(1) = sum d phi_d`.
    pub fn mean_degree(&self) -> f64 {
        self.probs.iter().map(|&(d, p)| d as f64 * p).sum()
    }

    /// Edge-perspective probabilities `lambda_d`.
    pub fn edge_perspective(&self) -> Vec<(u32, f64)> {
        let mean = self.mean_degree();
        self.probs
            .iter()
            .map(|&(d, p)| (d, d as f64 * p / mean))
            .collect()
    }

    /// `phi(x) = sum phi_d x^d`.
    pub fn node_poly(&self, x: f64) -> f64 {
        self.probs
            .iter()
            .map(|&(d, p)| p * libm::pow(x, d as f64))
            .sum()
    }

    /// `lambda(x) = sum lambda_d x^(d-1)`.
    pub fn edge_poly(&self, x: f64) -> f64 {
        let mean = self.mean_degree();
        self.probs
            .iter()
            .map(|&(d, p)| d as f64 * p / mean * libm::pow(x, (d - 1) as f64))
            .sum()
    }

    /// Draw one degree by inverting the CDF.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for &(d, p) in &self.probs {
            acc += p;
            if u < acc {
                return d;
            }
        }
        // Rounding left a sliver above the last cumulative value.
        self.probs
            .iter()
            .rev()
            .find(|&&(_, p)| p > 0.0)
            .map(|&(d, _)| d)
            .unwrap_or_else(|| self.max_degree())
    }
}

impl FromStr for DegreeDistribution {
    type Err = Error;

    /// Parse `"d:prob,d:prob,..."`.
    fn from_str(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (d, p) = item.split_once(':').ok_or_else(|| {
                Error::InvalidDistribution(format!("expected `d:prob`, got `{item}`"))
            })?;
            let d: u32 = d
                .trim()
                .parse()
                .map_err(|_| Error::InvalidDistribution(format!("bad degree `{d}`")))?;
            let p: f64 = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidDistribution(format!("bad probability `{p}`")))?;
            pairs.push((d, p));
        }
        DegreeDistribution::new(pairs)
    }
}

impl fmt::Display for DegreeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(d, p)) in self.probs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}:{p}")?;
        }
        Ok(())
    }
}

#[cfg(feature = "serde")]
mod serde_impl {
    use super::*;
    use alloc::collections::BTreeMap;
    use alloc::string::{String, ToString};
    use serde::de::Error as _;
    use serde::ser::SerializeMap;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    // JSON object keyed by degree: {"2": 0.625, "3": 0.25}.
    impl Serialize for DegreeDistribution {
        fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
            let mut map = serializer.serialize_map(Some(self.probs.len()))?;
            for &(d, p) in &self.probs {
                map.serialize_entry(&d.to_string(), &p)?;
            }
            map.end()
        }
    }

    impl<'de> Deserialize<'de> for DegreeDistribution {
        fn deserialize<D: Deserializer<'de>>(
            deserializer: D,
        ) -> core::result::Result<Self, D::Error> {
            let raw = BTreeMap::<String, f64>::deserialize(deserializer)?;
            let mut pairs = Vec::with_capacity(raw.len());
            for (k, p) in raw {
                let d: u32 = k
                    .trim()
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad degree key `{k}`")))?;
                pairs.push((d, p));
            }
            DegreeDistribution::new(pairs).map_err(D::Error::custom)
        }
    }
}
