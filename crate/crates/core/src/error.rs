use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring specification `{0}`")]
    RingSpec(String),
    #[error("cannot enumerate the infinite ring {0}")]
    InfiniteEnumeration(String),
    #[error("ring with {0} elements is too large for table arithmetic")]
    RingTooLarge(usize),
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("{0} is not a unit")]
    NotUnit(String),
    #[error("no decomposition of {0} as xi^2 - eta^2 + s with units xi, eta and s in S")]
    SquareDiff(String),

    #[error("invalid root system {0}")]
    InvalidRootSystem(String),
    #[error("roots are linearly dependent")]
    DependentRoots,
    #[error("structure constants inconsistent at roots ({0}, {1}, {2})")]
    StructureConstants(usize, usize, usize),

    #[error("divided power X^{power}/{power}! of root #{root} is not integral")]
    NonIntegralDividedPower { root: usize, power: usize },
    #[error("unsupported representation: {0}")]
    UnsupportedRep(String),
    #[error("enumeration cap {cap} exceeded after {reached} elements")]
    CapExceeded { cap: usize, reached: usize },
    #[error("matrix is not invertible")]
    Singular,
    #[error("bruhat factorization failed: {0}")]
    Bruhat(String),
    #[error("missing torus witness for roots #{0}, #{1}")]
    MissingWitness(usize, usize),

    #[error("parse error at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("evaluation budget of {0} atomic checks exceeded")]
    Budget(u64),
    #[error("formula must have exactly one free variable, found {0}")]
    FreeVariables(usize),
    #[error("unknown parameter @{0}")]
    UnknownParam(usize),

    #[error("{0} is not in Gamma_1: its (1,1) entry is not a unit")]
    NotInGamma1(String),
    #[error("no unit tau with tau^2 != 1 in component {0}")]
    NoTau(String),

    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
