//! Crate-wide error type.

/// Errors shared by all modules. Positions are 0-based indices into the
/// expanded (run-length decoded) word.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("symbol {symbol} is not in the word's alphabet")]
    SymbolNotInAlphabet { symbol: String },

    #[error("word is not balanced (failure at position {position})")]
    Unbalanced { position: usize },

    #[error("signature is empty")]
    EmptySignature,

    #[error("word is not a signature (violation at position {position})")]
    InvalidSignature { position: usize },

    #[error("letter counts differ: x={x}, y={y}, z={z}")]
    UnequalLetterCounts { x: usize, y: usize, z: usize },

    #[error("signature is reducible; factor it first")]
    ReducibleSignature,

    #[error("condition 1 fails: restriction to {{{restriction}}} is unbalanced at position {position}")]
    Condition1Unbalanced {
        restriction: &'static str,
        position: usize,
    },

    #[error("condition 1 fails: block sizes of the {{{restriction}}} restriction do not refine the exponent sequence")]
    Condition1Refinement { restriction: &'static str },

    #[error("signature is not extendable ({reason})")]
    NotExtendable { reason: &'static str },

    #[error("label {label} is not in the ground set")]
    LabelNotInGround { label: u32 },

    #[error("row of label {label} mentions its own label")]
    RowMentionsOwnLabel { label: u32 },

    #[error("ground sets differ")]
    GroundMismatch,

    #[error("tableau is not in the image of the row construction: {reason}")]
    NotRegularConstructible { reason: String },

    #[error("enumeration budget exceeded (limit {limit})")]
    BudgetExceeded { limit: u64 },

    #[error("output file exists; pass --force to overwrite")]
    RefusingToOverwrite,

    #[error("{0}")]
    Precondition(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
