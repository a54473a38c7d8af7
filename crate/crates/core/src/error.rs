use thiserror::Error;

/// Errors reported by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the documented domain of an operation.
    #[error("invalid {what}: {details}")]
    InvalidParameter { what: &'static str, details: String },

    /// A multiplication table violates one of the group laws.
    #[error("not a group table: {law} fails ({details})")]
    InvalidGroup { law: &'static str, details: String },

    /// Malformed text input (group tables, polynomial files, CLI specs).
    #[error("parse error at line {line}: {details}")]
    Parse { line: usize, details: String },

    /// The requested computation exceeds the configured enumeration budget.
    #[error("resource limit exceeded: {details} (budget 2^{budget_bits})")]
    ResourceLimit { details: String, budget_bits: u32 },

    /// An internal cross-check failed; indicates a bug, not bad input.
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn invalid(what: &'static str, details: impl Into<String>) -> Self {
        Error::InvalidParameter {
            what,
            details: details.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
