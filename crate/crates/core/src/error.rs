use thiserror::Error;

/// Errors raised by the sketching, detection and simulation primitives.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sketch depth must be at least 1")]
    ZeroDepth,
    #[error("sketch counter overflowed the signed 64-bit range")]
    CounterOverflow,
    #[error("window contains no packets")]
    EmptyWindow,
    #[error("argument out of domain: {0}")]
    Domain(&'static str),
    #[error("rate is undefined: {0} class is empty")]
    UndefinedRate(&'static str),
    #[error("header universe exhausted: needed {needed} fresh headers, {available} available")]
    UniverseExhausted { needed: u64, available: u64 },
    #[error("invalid trial configuration: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
