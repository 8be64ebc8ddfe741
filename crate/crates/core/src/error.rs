use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order n = {n} is below the minimum of {min}")]
    OrderTooSmall { n: usize, min: usize },

    /// Refused by a resource guard; `guard` names the guard that tripped.
    #[error("order n = {n} exceeds the {guard} limit of {limit}")]
    ResourceGuard {
        n: usize,
        limit: usize,
        guard: &'static str,
    },

    #[error("rotation length {k} is out of range for a permutation of length {len}")]
    RotationOutOfRange { k: usize, len: usize },

    #[error("not a permutation of 1..={len}: {reason}")]
    NotPermutation { len: usize, reason: String },

    #[error("window at position {position} is not an (n-1)-permutation of [{n}]")]
    InvalidWindow { position: usize, n: usize },

    #[error("window at position {position} repeats an earlier window")]
    RepeatedWindow { position: usize },

    #[error("cycle of length {len} does not have the required length {expected}")]
    CycleLength { len: usize, expected: usize },

    #[error("rank {rank} is out of range for n = {n}")]
    RankOutOfRange { n: usize, rank: String },

    #[error("sigma_n edge from vertex {vertex} has no partner edge in the coset graph")]
    PairingFailure { vertex: String },
}
