use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("relation is not antisymmetric: `{0}` and `{1}` lie in a cycle")]
    CycleDetected(String, String),
    #[error("poset has {0} elements; at most {max} are supported", max = crate::MAX_ELEMENTS)]
    TooLarge(usize),
    #[error("meets and joins of the empty subset are not considered")]
    EmptySubset,
    #[error("element index {0} is out of range")]
    UnknownElement(usize),
    #[error("point index {0} is not in the ground set")]
    UnknownPoint(usize),
    #[error("arity bound must be at least 2, got {0}")]
    InvalidArity(usize),
    #[error("search budget exhausted after {steps} steps")]
    BudgetExceeded { steps: u64 },
    #[error("distributive envelope exceeds {0} sets")]
    SizeExceeded(usize),
    #[error("point `{point}` does not induce a filter: {detail}")]
    PointFilterInvalid { point: String, detail: String },
    #[error("representation is not valid: {0} violation(s)")]
    InvalidRepresentation(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("poset size {n} is above the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("search budget exhausted at n = {n} after {evaluated} posets")]
    SearchBudgetExceeded { n: usize, evaluated: u64 },
    #[error("cannot parse predicate `{0}`")]
    PredicateSyntax(String),
}

pub type Result<T> = core::result::Result<T, Error>;
