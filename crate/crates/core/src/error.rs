use thiserror::Error;

use crate::report::Witness;

/// Errors raised when an input fails a structural precondition.
///
/// Failures of an inequality that should hold by theory are not errors; they
/// are reported through [`crate::report::Report`] with a witness.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("table entry out of range at ({0}, {1})")]
    BadTable(usize, usize),
    #[error("carrier of size {0} exceeds the limit of {1}")]
    TooLarge(usize, usize),
    #[error("bad generator parameters: {0}")]
    BadParams(String),
    #[error("not associative: ({0}+{1})+{2} differs from {0}+({1}+{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} does not have exactly one inverse ({1} found)")]
    NotInverse(usize, usize),
    #[error("idempotents {0} and {1} do not commute")]
    IdempotentsDontCommute(usize, usize),
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("negative value at index {0}")]
    NegativeValue(usize),

    #[error("pair-map is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("pair-map is not submodular at ({0}, {1}, {2})")]
    NotSubmodular(usize, usize, usize),
    #[error("self-distance of {0} exceeds p({0}, {1})")]
    DiagonalNotDominated(usize, usize),
    #[error("negative self-distance at {0}")]
    NegativeSelfDistance(usize),
    #[error("p and q disagree on the diagonal at {0}")]
    DiagonalMismatch(usize),
    #[error("no admissible linking constant: pair ({0}, {1})")]
    NoAdmissibleK(usize, usize),
    #[error("not a pseudo-metric: {0}")]
    NotPseudoMetric(String),
    #[error("quotient is not well defined: classes of {0} and {1}")]
    QuotientNotWellDefined(usize, usize),

    #[error("precondition p(x,x) v p(y,y) <= p(x,y) fails at ({0}, {1})")]
    PreconditionDiagNotDominated(usize, usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no upper bound for ({0}, {1})")]
    NoUpperBound(usize, usize),
    #[error("value {0} lies outside the domain of the concave map")]
    OutOfDomain(String),

    #[error("semigroup is not Clifford: x+x* != x*+x at {0}")]
    NotClifford(usize),
    #[error("semigroup has no identity element")]
    NoIdentity,
    #[error("metric is not right-subinvariant")]
    NotRightSubinvariant(Box<Witness>),
    #[error("metric is not skew-convex")]
    NotSkewConvex(Box<Witness>),
}

impl Error {
    /// Malformed or out-of-range input, as opposed to a structure that
    /// fails a mathematical condition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::BadRational(_)
                | Error::Format(_)
                | Error::BadTable(..)
                | Error::TooLarge(..)
                | Error::BadParams(_)
                | Error::SizeMismatch { .. }
                | Error::NegativeValue(_)
                | Error::OutOfDomain(_)
        )
    }

    /// The counterexample carried by the error, if any.
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Error::NotRightSubinvariant(w) | Error::NotSkewConvex(w) => Some(w),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
