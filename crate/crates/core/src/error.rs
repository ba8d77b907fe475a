use thiserror::Error;

use crate::formula::ParseError;

/// Errors shared by every module of the crate.
///
/// Law violations are never errors: they are reported as failing entries of a
/// [`CertificateReport`](crate::report::CertificateReport).
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("guard `{name}` exceeded: {value} > {limit} (set QMODAL_GUARD_OVERRIDE=1 to lift it)")]
    Guard {
        name: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("{what} out of range: {value} not in {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("not an orthomodular lattice; failing laws: {0}")]
    NotAnOml(String),

    #[error("unbound atom `{0}`")]
    UnboundAtom(String),

    #[error("{0} requires a sampling seed (--seed)")]
    MissingSeed(&'static str),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
