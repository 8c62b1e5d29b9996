use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition {0} is not neighborly")]
    NotNeighborly(String),

    #[error("partition {0} is not admissible")]
    NotAdmissible(String),

    #[error("enumeration budget of {limit} partitions exceeded")]
    BudgetExceeded { limit: usize },

    #[error("brute-force oracle limited to {cap} edges, graph has {edges}")]
    BruteForceCap { edges: usize, cap: usize },

    #[error("pruned component {0} is not one of the six admissible shapes")]
    UnclassifiedComponent(String),

    #[error("chain of length {0} is divisible by 3 and cannot be pruned")]
    ChainDivisibleByThree(usize),

    #[error("exact division failed: {0}")]
    Divisibility(String),

    #[error("coefficient x^{x} q^{q} lies outside the known window (x <= {max_x}, q <= {max_q})")]
    OutOfWindow {
        x: usize,
        q: usize,
        max_x: usize,
        max_q: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
