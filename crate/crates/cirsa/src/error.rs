use std::io;
use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Model(#[from] cirsa_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("malformed record data: {0}")]
    Format(String),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Model(e) => e.kind(),
            Error::Io { .. } => "Io",
            Error::Format(_) => "Format",
            Error::Usage(_) => "Usage",
        }
    }
}
