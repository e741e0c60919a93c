use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate coefficient key {0}")]
    DuplicateKey(String),
    #[error("unknown color `{0}`")]
    UnknownColor(String),
    #[error("key of size {size} exceeds truncation order {order}")]
    KeyTooLarge { size: usize, order: usize },
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("series live on different color sets")]
    ColorSetMismatch,
    #[error("empty input")]
    EmptyInput,
    #[error("constant term must vanish")]
    NonzeroConstantTerm,
    #[error("{pins} pinned colors exceed truncation order {order}")]
    TooManyPins { pins: usize, order: usize },
    #[error("fiber block of size {size} exceeds kernel order {order}")]
    BlockTooLarge { size: usize, order: usize },
    #[error("color subset must not be empty")]
    EmptySubset,
    #[error("{labels} labels exceed the enumeration cap of {cap}")]
    CapExceeded { labels: usize, cap: usize },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid color set: {0}")]
    InvalidColorSet(String),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
