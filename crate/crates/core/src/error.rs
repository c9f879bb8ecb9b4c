//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("party count must be between 1 and {max}, got {n}")]
    PartyCount { n: u32, max: u32 },

    #[error("party {party} out of range for {n} parties")]
    PartyOutOfRange { party: u32, n: u32 },

    #[error("subset mask {mask} out of range for {n} parties (expected 1..={max})")]
    SubsetOutOfRange { mask: u64, n: u32, max: u64 },

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("subsets {a} and {b} overlap")]
    OverlappingSubsets { a: String, b: String },

    #[error("party counts differ: {left} vs {right}")]
    PartyCountMismatch { left: u32, right: u32 },

    #[error("{what} must be nonnegative, got {value}")]
    NegativeValue { what: String, value: String },

    #[error("inequality needs at least one nonzero coefficient")]
    EmptyInequality,

    #[error("family {family} takes {expected} role subsets, got {got}")]
    RoleCount { family: String, expected: usize, got: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("state needs {qubits} qubits, cap is {cap}")]
    QubitCap { qubits: usize, cap: usize },

    #[error("numeric integrity violated: {0}")]
    NumericIntegrity(String),

    #[error(
        "component {subset} = {value} is {residual:e} away from the nearest \
         rational with denominator <= {max_denominator} (tol {tol:e})"
    )]
    Unresolvable {
        subset: String,
        value: f64,
        residual: f64,
        max_denominator: u64,
        tol: f64,
    },
}

impl Error {
    /// Parse-error constructor used by the text-format readers.
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
