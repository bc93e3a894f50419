//! Error types shared across the engine.

use std::fmt;

use thiserror::Error;

/// A syntax error in a tree, word, semigroup or coefficient literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the problem was detected.
    pub position: usize,
    /// Description of the token class that was expected.
    pub expected: String,
    /// The lexeme actually found (`end of input` at the end).
    pub found: String,
}

impl ParseError {
    pub fn new(position: usize, expected: impl Into<String>, found: impl Into<String>) -> Self {
        Self {
            position,
            expected: expected.into(),
            found: found.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at offset {}: expected {}, found {}",
            self.position, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("semigroup mismatch: {left} and {right} come from different specifications")]
    SpecMismatch { left: String, right: String },
    #[error("invalid semigroup specification: {0}")]
    InvalidSpec(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not a Rota-Baxter family word: {0}")]
    NotRbWord(String),
    #[error("undefined operation: {0}")]
    Undefined(String),
    #[error("operation requires weight {expected}, context has weight {found}")]
    WeightMismatch { expected: String, found: String },
    #[error("Laurent exponent {exponent} outside window [{lo}, {hi}]")]
    LaurentRange { exponent: i64, lo: i64, hi: i64 },
    #[error("rewriting did not terminate within {0} steps")]
    RewriteExhausted(usize),
    #[error("enumeration rejected: {0}")]
    Enumeration(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
