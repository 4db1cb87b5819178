//! Exact and modular verification of supercongruences for sums of squares of
//! the polynomial sequence
//!
//! ```text
//! t_n(x) = sum_{k=0}^{n} C(n,k) C(x,k) C(x+k,k) 2^k
//! ```
//!
//! over odd primes p and p-integral rational x, together with the binomial
//! identities and block estimates behind them.
//!
//! The modular kernels in [`sequences`] and [`congruence`] run in O(p^2)
//! residue operations per (p, x); [`sequences::exact_rows`] and the functions
//! in [`identities`] are the exact-rational oracle they are checked against.

pub mod congruence;
pub mod error;
pub mod exact;
pub mod harness;
pub mod identities;
pub mod padic;
pub mod par;
pub mod primes;
pub mod residue;
pub mod sequences;

pub use error::{Error, Result};
pub use exact::Rational;
pub use par::Exec;
pub use residue::{mod_inv, mod_reduce, Modulus, Residue};
