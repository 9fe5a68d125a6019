use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order {from} does not divide target order {to}")]
    OrderNotDivisible { from: u32, to: u32 },
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix has nonzero trace")]
    NonzeroTrace,
    #[error("automorphism has no finite order up to {cap}; use finite-order separating generators")]
    InfiniteOrder { cap: usize },
    #[error("generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),
    #[error("parts do not form a direct sum of the algebra: {0}")]
    NotDirectSum(String),
    #[error("automorphism does not map part {0} onto a part of the grading")]
    NotPermuting(usize),
    #[error("grading carries no labels")]
    Unlabeled,
    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("generator {0} does not normalize the MAD-group")]
    NotNormalizing(String),
    #[error("unknown catalog entry `{0}` (expected g1, g2, g3 or g4)")]
    UnknownCatalog(String),
    #[error("catalog mismatch: {0}")]
    CatalogMismatch(String),
    #[error("group closure exceeded cap of {0} elements")]
    ClosureCap(usize),
    #[error("solver node cap {cap} exceeded after {nodes} nodes with {solutions} solutions found")]
    NodeCap {
        cap: u64,
        nodes: u64,
        solutions: usize,
    },
    #[error("permutation representation is not faithful: {0}")]
    NotFaithful(String),
    #[error("too many variables: {0} pairs (at most 128 supported)")]
    TooManyVariables(usize),
    #[error("parse error: {0}")]
    Parse(String),
}
