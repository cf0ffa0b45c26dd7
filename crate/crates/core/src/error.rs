use thiserror::Error;

/// Errors surfaced by the exact-computation pipeline. Several of these
/// (`Inexact`, `DegreeViolation`, `NegativeResidue`, `NonTermination`)
/// indicate an internal inconsistency rather than bad input: the
/// identities they guard are theorems, so hitting one means a bug.
#[derive(Debug, Error)]
pub enum Error {
    #[error("inexact division: {0}")]
    Inexact(String),

    #[error("unsupported or invalid Cartan datum: {0}")]
    InvalidDatum(String),

    #[error("invalid diagram automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("braid order exceeded cap of {cap} for generator pair ({a}, {b})")]
    OrderCap { a: usize, b: usize, cap: usize },

    #[error("saturation did not terminate within {0} steps")]
    NonTermination(usize),

    #[error("canonical-basis degree bound violated for {context}: {detail}")]
    DegreeViolation { context: String, detail: String },

    #[error("length cutoff {cutoff} exceeded by element of length {length}")]
    Cutoff { cutoff: usize, length: usize },

    #[error("negative residue while peeling characters: {0}")]
    NegativeResidue(String),

    #[error("assertion failed: {0}")]
    Assertion(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("malformed data: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
