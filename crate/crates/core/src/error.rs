use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("n = {0} must be odd and at least 3")]
    EvenOrSmallN(u32),
    #[error("h must be positive")]
    ZeroH,
    #[error("field of order {p}^{degree} is too large for this toolkit")]
    TowerTooLarge { p: u32, degree: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not the order of a subfield of the tower")]
    BadSubfieldOrder(u64),
    #[error("element does not lie in F_(q^2)")]
    NotInQuadraticSubfield,
    #[error("exponent {0} does not divide the order of the multiplicative group")]
    BadExponent(u64),
    #[error("no element of order {0} in the multiplicative group")]
    BadOrder(u64),
    #[error("enumeration needs {needed} items, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("no projection from {from} to {to} in the cover diagram")]
    InvalidEdge { from: String, to: String },
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("the orbit criterion only applies to affine points")]
    InfinityInput,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("unknown cover {0}")]
    UnknownCover(String),
    #[error("precision {given} must exceed {needed}")]
    PrecisionTooLow { given: u64, needed: u64 },
    #[error("subgroup filtration incompatible with the group filtration: {0}")]
    IncompatibleSubgroup(String),
    #[error("(a, b) does not satisfy a^q + a = b^(q+1) in F_(q^2)")]
    NotInQ,
    #[error("unknown subgroup {0}")]
    UnknownSubgroup(String),
    #[error("invalid ramification filtration: {0}")]
    InvalidFiltration(String),
    #[error("genus {0} is below 2")]
    GenusTooSmall(i128),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
