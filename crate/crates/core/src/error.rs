use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid step: {0}")]
    InvalidStep(String),
    #[error("step set is not small-step (coordinates outside {{-1,0,1}})")]
    NotSmallStep,
    #[error("predicate only defined for nonsingular small-step sets")]
    PredicateOutOfScope,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("elimination degenerated under both variable orders")]
    DegenerateElimination,
    #[error("a pure second partial derivative vanishes: {0}")]
    ZeroHessianTerm(String),
    #[error("step set is contained in the half-plane {a}*x + {b}*y >= 0")]
    HalfPlaneConfined { a: i64, b: i64 },
    #[error("precision exhausted at {bits} bits: {what}")]
    PrecisionExhausted { bits: u32, what: String },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("no root of the annihilator lies in the target enclosure")]
    NoMatchingRoot,
    #[error("several roots of the annihilator meet the target enclosure")]
    AmbiguousRoot,
    #[error("n = {n} exceeds the exact enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("structural period {structural} disagrees with sequence period {observed}")]
    PeriodMismatch { structural: u32, observed: u32 },
    #[error("need at least {needed} usable terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },
    #[error("non-positive term at n = {0} on the fitted residue class")]
    NonPositiveTerm(usize),
    #[error("fixture {0} matched no small-step set")]
    UnmatchedFixture(String),
}
