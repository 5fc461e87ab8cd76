use thiserror::Error;

pub type Result<T> = std::result::Result<T, GroupError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image list is not a bijection on 0..{degree}")]
    NotBijection { degree: usize },
    #[error("degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("closure exceeded the closure cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("group of order {order} exceeds the subgroup cap {cap}")]
    SubgroupCapExceeded { order: usize, cap: usize },
    #[error("oracle scale exceeded: {what} is {value}, cap {cap}")]
    OracleCapExceeded { what: &'static str, value: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("subgroup of order {order} is not a {p}-group")]
    NotPGroup { p: u64, order: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("action is not a homomorphism into automorphisms: {0}")]
    InvalidAction(String),
    #[error("Frattini quotient is trivial")]
    TrivialFrattiniQuotient,
    #[error("induced map is not scalar: vector {vector} maps to {image}")]
    NotScalar { vector: usize, image: usize },
    #[error("induced map is not scalar: vectors {first} and {second} are scaled differently")]
    InconsistentScalar { first: usize, second: usize },
    #[error("not a Sylow family: {0}")]
    NotSylowFamily(String),
    #[error("prime {0} does not divide the group order")]
    PrimeNotInPi(u64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("empty set")]
    EmptySet,
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
}
