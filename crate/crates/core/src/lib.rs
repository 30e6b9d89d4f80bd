//! Learning winning sets of infinite-duration safety games played on
//! regular arenas.
//!
//! Game graphs are given symbolically: vertex sets are regular languages and
//! the edge relation is a rational (transducer-defined) relation. A learner
//! proposes a candidate winning set as a DFA and a teacher answers with
//! positive, negative, existential or universal counterexamples until a
//! candidate passes every check.

#![no_std]

extern crate alloc;

pub mod automata;
pub mod bench;
pub mod error;
pub mod game;
pub mod learn;
pub mod relations;
pub mod rpni;
pub mod sample;
pub mod sat;
pub mod sat_learner;
pub mod teacher;
pub mod word;

pub use automata::{Dfa, Nfa, State};
pub use error::Error;
pub use word::{Alphabet, Symbol, Word};
