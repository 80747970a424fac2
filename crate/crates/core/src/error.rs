use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("capacity exceeded: {what} needs {needed}, cap is {cap}")]
    CapacityExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("idempotents do not generate the unit ideal")]
    NotACover,
    #[error("gluing failed at block {block}: no annihilating idempotent")]
    GluingFailed { block: usize },
    #[error("not a ring homomorphism: fails on ({a}, {b})")]
    NotAHomomorphism { a: String, b: String },
    #[error("ring is not an elementary divisor ring")]
    NotEdr,
    #[error("ring is not arithmetical")]
    NotArithmetical,
    #[error("ring is not a finite chain ring")]
    NotAChainRing,
    #[error("operation undefined for the zero ideal or the unit ideal")]
    UndefinedForZeroOrUnitIdeal,
    #[error("the two points coincide")]
    SamePoint,
    #[error("candidate generator {0} does not annihilate the element")]
    NotInAnnihilator(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
}

impl Error {
    pub(crate) fn cap(what: &'static str, needed: impl Into<u128>, cap: impl Into<u128>) -> Self {
        Error::CapacityExceeded {
            what,
            needed: needed.into(),
            cap: cap.into(),
        }
    }
}
