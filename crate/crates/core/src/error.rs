use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid invariant factor {0}: every factor must be at least 2")]
    InvalidFactor(u64),
    #[error("cyclotomic moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("sigma_{t} is not an automorphism of Q(zeta_{m}): gcd(t, m) != 1")]
    InvalidAutomorphism { t: i64, m: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("element {0:?} does not belong to the group")]
    ForeignElement(Vec<u64>),
    #[error("parameter profile is inconsistent: {0}")]
    ProfileInconsistent(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("theorem violation (implementation bug): {0}")]
    TheoremViolation(String),
    #[error("malformed parameters: {0}")]
    MalformedParameters(String),
    #[error("inconsistent difference-set parameters: {0}")]
    ParameterInconsistent(String),
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}
