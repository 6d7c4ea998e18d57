use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed instance: {0}")]
    Malformed(String),

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("aisle {aisle} out of range 1..={aisles}")]
    AisleOutOfRange { aisle: usize, aisles: usize },

    #[error("subaisle {subaisle} out of range 1..={max}")]
    SubaisleOutOfRange { subaisle: usize, max: usize },

    #[error("cross-aisle {cross_aisle} out of range 1..={max}")]
    CrossAisleOutOfRange { cross_aisle: usize, max: usize },

    #[error("pick on cross-aisle vertex (aisle {aisle}, subaisle {subaisle}, offset {offset})")]
    PickOnVertex { aisle: usize, subaisle: usize, offset: i64 },

    #[error("pick offset {offset} outside subaisle of height {height}")]
    OffsetOutOfRange { offset: i64, height: u64 },

    #[error("requested {requested} picks but only {available} distinct positions exist")]
    TooManyPicks { requested: usize, available: u64 },

    #[error("edge refers to a nonexistent aisle point: {0}")]
    UnknownEdge(String),

    #[error("configuration {config} not valid for segment: {reason}")]
    InvalidConfig { config: &'static str, reason: String },

    #[error("inconsistent incidence: {0}")]
    Incidence(String),

    #[error("solvers support n in {{2, 3}}, got n = {0}")]
    UnsupportedCrossAisles(usize),

    #[error("not a tour subgraph: {0}")]
    NotTourSubgraph(String),

    #[error("instance too large for oracle: {0}")]
    OracleGuard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
