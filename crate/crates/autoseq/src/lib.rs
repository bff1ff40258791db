//! An automata-based engine that decides first-order statements about
//! automatic sequences in base-2 and Fibonacci (Zeckendorf) numeration,
//! and uses it to compute Frobenius numbers of tails of the evil, odious,
//! lower/upper Wythoff, and 2^i + 1 sequences.
//!
//! The engine has two independent halves that check each other:
//!
//! * a logic side: first-order formulas over (N, +, <) with indexing into
//!   automatic sequences compile to multi-track automata, so closed
//!   sentences are decided exactly and synchronized relations such as
//!   n -> G(n) become 2-track automata;
//! * an oracle side: direct integer evaluators and dynamic-programming
//!   Frobenius computation with an explicit termination certificate.

pub mod automata;
pub mod arith;
pub mod cli;
pub mod error;
pub mod numeration;

pub use error::{Error, Result};
