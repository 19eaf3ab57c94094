use thiserror::Error;

/// Errors surfaced by the exact-arithmetic routines.
///
/// Every precondition violation maps to a dedicated variant so callers (and
/// the CLI) can distinguish bad input from a genuine counterexample found by
/// a verification sweep.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("sawtooth ((x)) is evaluated at an integer ({0}); the convention here assigns -1/2 there, which is almost never what a Dedekind-sum term means")]
    SawtoothAtInteger(String),

    #[error("{a} is not invertible modulo {n}")]
    NotInvertible { a: i64, n: i64 },

    #[error("gcd({a}, {b}) = {g} != 1; arguments must be coprime")]
    NotCoprime { a: i64, b: i64, g: i64 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("Hirzebruch-Jung entry {0} < 2")]
    HjEntryTooSmall(i64),

    #[error("exponents ({0}, {1}, {2}, {3}) are excluded: opposite exponents may not both be 1")]
    ExcludedExponents(i64, i64, i64, i64),

    #[error("hypothesis not satisfied: {0}")]
    HypothesisViolated(String),

    #[error("internal consistency check failed: {0}")]
    ConsistencyFailure(String),

    #[error("search exhausted without success: {0}")]
    SearchExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
