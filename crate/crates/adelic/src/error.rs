use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A sweep or scan exceeded a configured ceiling or guardrail.
    #[error("capacity: {0}")]
    Capacity(String),

    /// An input violated a mathematical precondition.
    #[error("domain: {0}")]
    Domain(String),

    /// The prime divides a numerator or denominator it must not divide.
    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },

    /// A modular value is undefined because p divides a denominator.
    #[error("pole at p = {p} (index {n})")]
    Pole { n: u64, p: u64 },

    /// Mismatched windows, overflowing bad sets, or malformed structures.
    #[error("structural: {0}")]
    Structural(String),

    /// Two supposedly-equal computation paths disagreed.
    #[error("internal consistency: {0}")]
    Inconsistency(String),

    /// I/O or parse failure at the CLI boundary.
    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
