use thiserror::Error;

/// Every failure the workbench can report.
///
/// Variants ending in `Violation`, `NotRegular` and `NoDelta` mean a claimed
/// mathematical property did not hold on the instance at hand; the rest are
/// precondition or resource failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("enumeration needs {needed} items but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("field of size {0} is not GF(q^2)")]
    NotSquareField(u64),
    #[error("element {0} is not in the subfield")]
    NotInSubfield(u32),
    #[error("gcd({n}, {q}) != 1")]
    NotCoprime { n: u64, q: u64 },
    #[error("element does not have multiplicative order {0}")]
    NotPrimitiveRoot(u64),
    #[error("dual dimension is {0}, expected 4")]
    DegenerateDimension(usize),
    #[error("four-weight claim fails: {0}")]
    FourWeightViolation(String),
    #[error("MacWilliams transform is not integral at j = {0}")]
    NonIntegerResult(usize),
    #[error("MacWilliams transform is negative at j = {0}")]
    NegativeCount(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("support {block:?} has multiplicity {multiplicity}, expected {expected}")]
    MultiplicityNotQMinus1 {
        block: Vec<usize>,
        multiplicity: u64,
        expected: u64,
    },
    #[error("t-subset {witness:?} lies in {count} blocks, expected {expected}")]
    NotRegular {
        witness: Vec<usize>,
        count: u64,
        expected: u64,
    },
    #[error("count {value} is outside the allowed set {allowed:?}")]
    ValueSetViolation { value: u64, allowed: Vec<u64> },
    #[error("P_a has {0} zeros, not the full count p^e + 1")]
    NotFullCase(u64),
    #[error("x0^2/a is not a (p^k - 1)-th power")]
    NoDelta,
    #[error("w^(p^k) - w + 1/(delta x0) has no root")]
    NoAuxiliaryRoot,
    #[error("closed form applies only when exactly one of a, b is zero")]
    NotApplicable,
    #[error("parity submatrix has nullity {0}, expected 1")]
    UnexpectedNullity(usize),
}

impl Error {
    /// The error witnesses a failed mathematical claim rather than bad input
    /// or an exhausted budget.
    pub fn is_falsification(&self) -> bool {
        matches!(
            self,
            Error::FourWeightViolation(_)
                | Error::NonIntegerResult(_)
                | Error::NegativeCount(_)
                | Error::MultiplicityNotQMinus1 { .. }
                | Error::NotRegular { .. }
                | Error::ValueSetViolation { .. }
                | Error::NoDelta
                | Error::NoAuxiliaryRoot
                | Error::UnexpectedNullity(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
