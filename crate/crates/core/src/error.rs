use thiserror::Error;

/// Library-wide error type. The CLI maps these onto exit codes, so keep the
/// variants aligned with failure *kinds* rather than call sites.
#[derive(Debug, Error)]
pub enum Error {
    /// Caller handed us something structurally unusable: wrong buffer length,
    /// non-finite input, zero plane count, mismatched dimensions, ...
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A numerical guarantee was violated (NaN/Inf mid-pipeline, failed
    /// gradient check, non-invertible skinning transform).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Malformed external data: checkpoints, manifests, images, configs.
    #[error("parse error in {what}: {detail}")]
    Parse { what: String, detail: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub fn parse(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Parse {
            what: what.into(),
            detail: detail.into(),
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
