use num_bigint::BigInt;
use thiserror::Error;

/// Every failure the library reports. Variants carry enough context to
/// print a one-line diagnosis on the command line.
#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a monic cubic, got degree {degree} with leading coefficient {leading}")]
    NotMonicCubic { degree: usize, leading: BigInt },

    #[error("F has the rational root {root}: the curve has rational 2-torsion")]
    RationalTwoTorsion { root: BigInt },

    #[error("factorization too large: {digits} digits exceeds the {limit}-digit guard")]
    FactorizationTooLarge { digits: usize, limit: usize },

    #[error("cannot factor zero")]
    FactorZero,

    #[error("p-adic precision {precision} at p = {p} is insufficient; raise precision")]
    RaisePrecision { p: BigInt, precision: u32 },

    #[error("prime {0} is too large for residue-field arithmetic")]
    PrimeTooLarge(BigInt),

    #[error("{0} is not prime")]
    NotPrime(BigInt),

    #[error("zero element has no principal ideal or inverse")]
    ZeroElement,

    #[error("relation search exhausted its budget: {0}")]
    RelationSearchExhausted(String),

    #[error("no element with sign pattern {pattern:?} found within the search budget")]
    RealizerNotFound { pattern: Vec<i8> },

    #[error("hypotheses fail: {0}")]
    HypothesesFailed(String),

    #[error("root number requires an override: additive reduction at {0}")]
    RootNumberRequiresOverride(BigInt),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("invalid twist parameter {0}: must be a nonzero squarefree integer")]
    InvalidTwist(BigInt),

    #[error("p = {0} divides 2 * disc(E)")]
    BadPrimeForTwist(BigInt),

    #[error("cannot parse curve: {0}")]
    Parse(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
