use thiserror::Error;

use crate::atoms::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("invalid guard `{text}`: {source}")]
    Guard {
        text: String,
        #[source]
        source: ParseError,
    },
    #[error("invalid automaton:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("malformed data word: {0}")]
    InvalidWord(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid counter machine: {0}")]
    InvalidMachine(String),
    #[error("invalid run: {0}")]
    InvalidRun(String),
    #[error("alphabet clash: {0}")]
    AlphabetClash(String),
    #[error("search budget exhausted after {0} generated states")]
    BudgetExhausted(u64),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
