use thiserror::Error;

use crate::properties::PropertySet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("instance has no players")]
    NoPlayers,
    #[error("instance has no resources")]
    NoResources,
    #[error("player {index} has non-positive weight {weight}")]
    NonPositiveWeight { index: usize, weight: i64 },
    #[error("total weight overflows 64-bit arithmetic")]
    WeightOverflow,
    #[error("assignment covers {actual} players, instance has {expected}")]
    AssignmentLength { expected: usize, actual: usize },
    #[error("player {player} is assigned to resource {resource}, instance has {m} resources")]
    ResourceOutOfRange { player: usize, resource: usize, m: usize },
    #[error("group weights do not match the instance: {0}")]
    GroupMismatch(String),
    #[error("unknown property atom `{0}`")]
    UnknownProperty(String),
    #[error("property set {0} is not handled by this solver")]
    UnsupportedProperty(PropertySet),
    #[error("enumeration refused: {n} players exceeds the cap of {cap}")]
    EnumerationCap { n: usize, cap: usize },
    #[error("partition instance is empty")]
    EmptyPartition,
}
