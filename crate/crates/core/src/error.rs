use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("variable sets differ: {0}")]
    VariableMismatch(String),
    #[error("variable `{0}` has no image under the substitution")]
    UnmappedVariable(String),
    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("polynomial is not invariant: {0}")]
    NotInvariant(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("singular matrix")]
    Singular,
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("pair counts differ across cosets of one double coset: {0}")]
    NonConstantCount(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("operators do not commute up to homotopy: {0}")]
    NonCommuting(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("incompatible tower at level {0}")]
    IncompatibleTower(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
