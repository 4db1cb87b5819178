use thiserror::Error;

/// Errors raised by the arithmetic kernels, the verification engine and the
/// suite harness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The rational has a denominator divisible by `p`, so it has no image in Z/p^e.
    #[error("{value} is not {p}-integral")]
    NonPIntegral { value: String, p: u64 },

    #[error("{value} is not invertible modulo {p}^{e}")]
    NotInvertible { value: String, p: u64, e: u32 },

    /// An intermediate denominator picked up a factor of `p` the modular
    /// inverse cannot absorb.
    #[error("degenerate modular reduction: {0}")]
    Degenerate(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("unsupported exponent {0}; expected 1, 2 or 3")]
    Exponent(u32),

    /// The residue m = <x>_p lies outside the range the check is stated for.
    #[error("residue m = {m} outside the admissible range for p = {p}: {reason}")]
    Regime { p: u64, m: u64, reason: &'static str },

    #[error("pole at x = {x} for n = {n}")]
    Pole { x: String, n: u64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
