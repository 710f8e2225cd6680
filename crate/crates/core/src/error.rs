use thiserror::Error;

/// Errors raised by the kernel.
///
/// The variants fall into three families that the command line maps onto
/// distinct exit codes: unmet hypotheses (1), malformed input (2) and broken
/// internal invariants (3).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("unbounded carrier: {0}")]
    Unbounded(String),

    #[error("invalid Poincare duality data in degree {degree}: {reason}")]
    InvalidPd { degree: i32, reason: String },

    #[error("no preimage of the fundamental class")]
    NoPreimage,

    #[error("the fundamental class has preimages but none of them is a cocycle")]
    NoCocyclePreimage,

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("broken chain complex in degree {degree}: boundaries are not contained in cycles")]
    BrokenComplex { degree: i32 },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl Error {
    /// Process exit code used by the command line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::UnknownGenerator(_)
            | Error::InvalidAlgebra(_)
            | Error::InvalidMorphism(_)
            | Error::DegreeMismatch(_)
            | Error::NotHomogeneous => 2,
            Error::BrokenComplex { .. }
            | Error::Invariant(_)
            | Error::Dimension(_)
            | Error::CarrierMismatch(_) => 3,
            Error::InvalidPd { .. }
            | Error::NoPreimage
            | Error::NoCocyclePreimage
            | Error::Hypothesis(_)
            | Error::Unbounded(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
