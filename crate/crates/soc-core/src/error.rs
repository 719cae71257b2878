//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building towers, evaluating
/// character sums, constructing codes, or certifying their properties.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic must be prime, got {0}")]
    NonPrime(u64),

    #[error("characteristic 2 is not supported, an odd prime is required")]
    EvenCharacteristic,

    #[error("{what} = {value} must divide s = {s}")]
    NonDivisor {
        what: &'static str,
        value: u32,
        s: u32,
    },

    #[error("field of order {p}^{s} exceeds the supported table size")]
    FieldTooLarge { p: u64, s: u32 },

    #[error("element {element} does not lie in the subfield of level {level}")]
    NotInSubfield { element: u64, level: u32 },

    #[error("leading coefficient of the quadratic must be nonzero")]
    ZeroLeadingCoefficient,

    #[error("product of Gauss symbols is not a rational integer")]
    NonIntegral,

    #[error("Gauss symbols over different characteristics cannot be combined")]
    MixedPrimes,

    #[error("s2/s1 = {s2}/{s1} must be an odd integer for this count")]
    QuotientNotOdd { s1: u32, s2: u32 },

    #[error("multiplier must be nonzero")]
    ZeroMu,

    #[error("neither s2 | s1 nor s1 | s2 holds (s1 = {s1}, s2 = {s2})")]
    IncompatibleLevels { s1: u32, s2: u32 },

    #[error("generator matrix has rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },

    #[error("closed-form table produced a non-integral entry: {detail}")]
    NonIntegralEntry { detail: String },

    #[error("closed-form table produced an invalid distribution: {detail}")]
    InvalidDistribution { detail: String },

    #[error("enumeration needs {required} coordinate operations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("the zero code has no nonzero weight")]
    ZeroCode,

    #[error("weight distribution is inconsistent: {detail}")]
    Inconsistent { detail: String },

    #[error("parameters do not satisfy any self-orthogonality side condition")]
    ConditionsNotMet,

    #[error("code is not self-orthogonal")]
    NotSelfOrthogonal,

    #[error("dimension gap is too small for a distance-3 chain (k = {k})")]
    DimensionGapTooSmall { k: usize },

    #[error("construction requires {expected}")]
    WrongShape { expected: &'static str },
}
