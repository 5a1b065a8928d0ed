//! Error type shared by every layer of the engine.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inputs that do not fit together: variable counts, ranks, matrix shapes, rings.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("invalid prime modulus {0}")]
    InvalidPrime(u64),

    #[error("prime modulus already fixed to {current}, cannot switch to {requested}")]
    PrimeConflict { current: u32, requested: u32 },

    #[error("ideal consists of zerodivisors")]
    Zerodivisors,

    #[error("no nonzerodivisor found within the search bound")]
    NonzerodivisorSearchExhausted,

    #[error("saturation by zero")]
    SaturationByZero,

    #[error("torsion submodule requires a domain")]
    NotADomain,

    #[error("fraction does not act on M")]
    FractionDoesNotAct,

    #[error("not a central endomorphism")]
    NotCentral,

    #[error("fractional ideal is not multiplicatively closed")]
    NotMultiplicativelyClosed,

    #[error("fractional ideal does not contain 1")]
    NotUnital,

    #[error("zero module")]
    ZeroModule,

    #[error("fiber over the origin has points that are not rational over the prime field")]
    NonRationalFiber,

    /// A computed object failed one of its own postconditions.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
