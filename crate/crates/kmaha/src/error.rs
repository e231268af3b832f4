//! Error type shared by all kmaha operations.
//!
//! The library is a verification tool: errors are loud and specific. A few
//! variants (`TheoremViolation`, `InternalBound`) flag conditions that are
//! mathematically impossible if both the underlying theorems and this
//! implementation are correct — they are never swallowed.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Two values built against different datums (different N or rank) were combined.
    #[error("datum mismatch: {0}")]
    DatumMismatch(String),

    /// A Laurent polynomial with negative or fractional exponents was used where ℤ[q] is required.
    #[error("not a polynomial in q: {0}")]
    NotAPolynomial(String),

    /// A datum description failed a construction invariant.
    #[error("config rejected: {0}")]
    ConfigRejected(String),

    /// A coweight outside the Tits cone was used where Θ^μ / T_{π^μ} needs μ ∈ 𝒯.
    #[error("coweight not in the Tits cone: {0}")]
    NotInCone(String),

    /// inv_plus_plus was called on a pair that is not a Bruhat raise.
    #[error("not a raising pair: {0}")]
    NotARaise(String),

    /// A bounded enumeration failed its completeness audit. Indicates a bug in
    /// the derived bounds, never acceptable.
    #[error("internal enumeration bound violated: {0}")]
    InternalBound(String),

    /// A proved theorem failed on concrete input. Indicates an implementation bug.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    /// A computation exceeded its configured term budget.
    #[error("out of budget: {0}")]
    OutOfBudget(String),

    /// Invalid argument to an operation (bad bounds, wrong datum class, ...).
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
