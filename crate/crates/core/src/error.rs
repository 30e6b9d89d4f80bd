use alloc::string::String;

use crate::word::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("invalid word: symbol {symbol} out of range for alphabet of size {alphabet_len}")]
    InvalidWord { symbol: Symbol, alphabet_len: usize },
    #[error("alphabet mismatch: {left} vs {right} symbols")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("language is infinite")]
    InfiniteLanguage,
    #[error("invariant `{invariant}` violated, witness: {witness}")]
    InvariantViolation { invariant: &'static str, witness: String },
    #[error("unknown benchmark family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("implication with antecedent {0} has an infinite consequent")]
    InfiniteConsequent(String),
    #[error("sample is contradictory")]
    Contradiction,
    #[error("no consistent DFA with at most {last} states")]
    CapExceeded { last: usize },
    #[error("interrupted")]
    Interrupted,
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("internal error: {0}")]
    Internal(String),
}
