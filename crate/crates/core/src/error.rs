use thiserror::Error;

use crate::recollement::Functor;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("relation `{relation}` does not vanish on the representation")]
    RelationViolated { relation: String },

    #[error("not a morphism: commuting square fails at arrow `{arrow}`")]
    NotAMorphism { arrow: String },

    #[error("atom list incomplete for this object: {0}")]
    AtomListIncomplete(String),

    #[error("atom fingerprint matrix is singular; atoms are not a complete list of pairwise non-isomorphic indecomposables")]
    SingularFingerprint,

    #[error("enumeration budget of {limit} exceeded")]
    Budget { limit: usize },

    #[error("atom count {count} exceeds the enumeration bound {bound}")]
    BoundExceeded { count: usize, bound: usize },

    #[error("precondition failed: {functor} is not exact on this instance")]
    NotExact { functor: Functor },

    #[error("internal invariant violated at {label}: {detail}")]
    Invariant { label: String, detail: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed document {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn invariant(label: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Invariant {
            label: label.into(),
            detail: detail.into(),
        }
    }
}
