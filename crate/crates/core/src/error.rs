use thiserror::Error;

use crate::strategy::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name}: {value} ({reason})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("walk capacity of {capacity} steps exceeded")]
    CapacityExceeded { capacity: usize },

    #[error("coin is not unitary (max |C†C - I| = {deviation:e})")]
    InvalidCoin { deviation: f64 },

    #[error("a step needs at least one coin")]
    EmptyStep,

    #[error("dense oracle refuses t = {steps} (limit {limit})")]
    OracleScale { steps: usize, limit: usize },

    #[error("program expands to more than {cap} steps")]
    ProgramTooLong { cap: usize },

    #[error("invalid game configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}
