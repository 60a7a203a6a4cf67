//! Register automata over equality atoms.
//!
//! Simulation, ε-elimination, emptiness, inclusion into one-register
//! automata, and the decision procedure for "is this one-register language
//! recognised by a deterministic automaton with `k` registers?", together
//! with instance generators and brute-force oracles.

pub mod atoms;
pub mod automaton;
pub mod determinize;
pub mod error;
pub mod generators;
pub mod inclusion;
pub mod oracle;
pub mod verdict;
pub mod word;

pub use error::Error;
