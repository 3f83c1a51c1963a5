use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: u128, cap: usize },

    #[error("element {0} is not in the group")]
    NotInGroup(String),

    #[error("structure mismatch: {0}")]
    StructureMismatch(String),

    #[error("residue {residue} is not invertible modulo {modulus}")]
    NonInvertibleResidue { residue: u64, modulus: u64 },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("counting expression `{counting}` does not match group expression `{group}`")]
    Incompatible { group: String, counting: String },

    #[error("({g}, {h}) is not a tame pair: h g h^-1 is not a power of g")]
    InvalidPair { g: String, h: String },

    #[error("not a subgroup of the ambient group: {0}")]
    NotSubgroup(String),
}
