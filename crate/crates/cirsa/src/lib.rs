//! Experiment harness for censored IRSA: parallel Monte Carlo over frames,
//! parameter sweeps in empirical and density-evolution mode, and CSV/JSON
//! output. The model itself lives in `cirsa-core`.

pub mod error;
pub mod montecarlo;
pub mod output;
pub mod record;
pub mod sweep;

pub use error::{Error, Result};
pub use montecarlo::{estimate_theta_parallel, run_monte_carlo, simulate, Summary};
pub use output::{emit, parse_csv, parse_json, read_records, write_records, Format};
pub use record::{Mode, PolicyKind, SweepRecord};
pub use sweep::{sweep, Axis, PolicySpec, SweepMode, SweepPoint};
