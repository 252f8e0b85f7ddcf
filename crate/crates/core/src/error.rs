use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{d} is a perfect square ({root}^2)")]
    PerfectSquare { d: BigUint, root: BigUint },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no solutions for j={j}, k={k}: {reason}")]
    NoFamily {
        j: usize,
        k: BigUint,
        reason: crate::family::NoFamilyReason,
    },

    #[error("ell={ell} is below the minimum {min} for this case")]
    EllOutOfRange { ell: BigUint, min: u32 },

    /// A result failed its own defining identity. Seeing this is a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
