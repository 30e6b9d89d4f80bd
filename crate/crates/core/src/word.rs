//! Alphabets, symbols and words.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;

/// Index of a symbol in its [`Alphabet`].
pub type Symbol = usize;

/// Reserved token for the empty label in transducer sections.
pub const EPSILON_TOKEN: &str = "_";

/// Ordered list of distinct printable tokens.
///
/// The declaration order is the symbol order used by shortlex comparisons.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s == EPSILON_TOKEN {
                return Err(Error::InvalidAlphabet(alloc::format!(
                    "token `{EPSILON_TOKEN}` is reserved for epsilon"
                )));
            }
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c.is_control() || "/,#[]:".contains(c)) {
                return Err(Error::InvalidAlphabet(alloc::format!("invalid token `{s}`")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(alloc::format!("duplicate token `{s}`")));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.symbols
    }

    pub fn token(&self, symbol: Symbol) -> &str {
        &self.symbols[symbol]
    }

    pub fn symbol(&self, token: &str) -> Option<Symbol> {
        self.symbols.iter().position(|s| s == token)
    }

    /// Parses a whitespace-separated token list. `ε` and `_` denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, Error> {
        let mut word = Vec::new();
        for tok in text.split_whitespace() {
            if tok == EPSILON_TOKEN || tok == "ε" {
                continue;
            }
            match self.symbol(tok) {
                Some(a) => word.push(a),
                None => return Err(Error::UnknownToken(tok.to_string())),
            }
        }
        Ok(Word(word))
    }

    /// Renders a word as space-separated tokens, `ε` for the empty word.
    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let mut out = String::new();
        for (i, &a) in word.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(self.token(a));
        }
        out
    }
}

/// A finite word over symbol indices.
///
/// Ordered shortlex: shorter words first, equal lengths compared
/// lexicographically by symbol index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn push(&mut self, a: Symbol) {
        self.0.push(a);
    }

    /// `self · a` as a new word.
    pub fn appended(&self, a: Symbol) -> Word {
        let mut v = self.0.clone();
        v.push(a);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// All prefixes including ε and the word itself, shortest first.
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(move |i| self.prefix(i))
    }

    pub fn check(&self, alphabet_len: usize) -> Result<(), Error> {
        match self.0.iter().find(|&&a| a >= alphabet_len) {
            Some(&a) => Err(Error::InvalidWord { symbol: a, alphabet_len }),
            None => Ok(()),
        }
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl<const N: usize> From<[Symbol; N]> for Word {
    fn from(v: [Symbol; N]) -> Self {
        Word(v.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// All words over `alphabet_len` symbols of length at most `max_len`, in shortlex order.
pub fn all_words(alphabet_len: usize, max_len: usize) -> Vec<Word> {
    let mut out = alloc::vec![Word::empty()];
    let mut layer = alloc::vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet_len);
        for w in &layer {
            for a in 0..alphabet_len {
                next.push(w.appended(a));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
