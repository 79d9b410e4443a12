use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A configuration field is outside its valid range.
    InvalidConfig(String),
    /// A degree distribution failed validation or parsing.
    InvalidDistribution(String),
    /// The largest repetition degree does not fit in the frame.
    DegreeExceedsSlots { max_degree: u32, slots: usize },
    /// The closed-form intra-slot decoding probability only holds up to the
    /// decodability boundary `gamma_th / snr`.
    ThresholdOutOfRange { nu: f64, limit: f64 },
    /// A bisection predicate holds on the whole search interval.
    NotBracketed { upper: f64 },
    /// The zero-loss region is only non-empty at `nu = gamma_th / snr`.
    InflectionRequiresBoundary { nu: f64, boundary: f64 },
}

impl Error {
    /// Short stable identifier, used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::InvalidDistribution(_) => "InvalidDistribution",
            Error::DegreeExceedsSlots { .. } => "DegreeExceedsSlots",
            Error::ThresholdOutOfRange { .. } => "ThresholdOutOfRange",
            Error::NotBracketed { .. } => "NotBracketed",
            Error::InflectionRequiresBoundary { .. } => "InflectionRequiresBoundary",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::InvalidDistribution(msg) => write!(f, "invalid degree distribution: {msg}"),
            Error::DegreeExceedsSlots { max_degree, slots } => {
                write!(f, "maximum degree {max_degree} exceeds the {slots} slots of the frame")
            }
            Error::ThresholdOutOfRange { nu, limit } => write!(
                f,
                "censor threshold {nu} is above gamma_th/snr = {limit}; the closed form does not apply"
            ),
            Error::NotBracketed { upper } => {
                write!(f, "predicate still holds at the upper search bound {upper}; widen the bracket")
            }
            Error::InflectionRequiresBoundary { nu, boundary } => write!(
                f,
                "inflection load needs nu = gamma_th/snr = {boundary} (got {nu}); use peak_throughput_load instead"
            ),
        }
    }
}

impl core::error::Error for Error {}
