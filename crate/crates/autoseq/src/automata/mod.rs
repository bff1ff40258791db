//! Finite automata over k-track digit alphabets.
//!
//! A `Dfa` reads tuple words column by column: a symbol packs one digit per
//! track, track 0 in the most significant bit. All automata here are total
//! (a dead state is materialized where needed) and, for every public
//! relation constructor, closed under adding or removing leading all-zero
//! columns.
//!
//! Words are nonempty; emptiness and equivalence are judged on words of
//! length >= 1.

mod format;
mod ops;

pub use format::{import_native, Imported};
pub use ops::*;

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::numeration::{System, TupleWord};

/// Default cap on states created during subset construction.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Boolean connectives for the product construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    Implies,
    Iff,
    Xor,
}

impl BoolOp {
    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::And => a && b,
            BoolOp::Or => a || b,
            BoolOp::Implies => !a || b,
            BoolOp::Iff => a == b,
            BoolOp::Xor => a != b,
        }
    }
}

/// Deterministic finite automaton over a k-track digit alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub system: System,
    pub arity: usize,
    pub initial: usize,
    pub accepting: Vec<bool>,
    /// trans[state][symbol], total: every row has `1 << arity` entries.
    pub trans: Vec<Vec<usize>>,
}

/// Nondeterministic automaton, the intermediate form of projection.
#[derive(Debug, Clone)]
pub struct Nfa {
    pub system: System,
    pub arity: usize,
    pub initial: Vec<usize>,
    pub accepting: Vec<bool>,
    pub trans: Vec<Vec<Vec<usize>>>,
}

/// Deterministic automaton with a per-state output symbol (DFAO).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao {
    pub system: System,
    pub arity: usize,
    pub initial: usize,
    pub output: Vec<u32>,
    pub trans: Vec<Vec<usize>>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn num_symbols(&self) -> usize {
        1usize << self.arity
    }

    pub fn state_count(&self) -> usize {
        self.num_states()
    }

    /// State count after trimming states that cannot reach an accepting
    /// state. Useful when comparing against sources that omit dead states.
    pub fn state_count_trimmed(&self) -> usize {
        let co = self.coreachable();
        self.reachable()
            .iter()
            .zip(&co)
            .filter(|(r, c)| **r && **c)
            .count()
    }

    pub fn run(&self, symbols: impl IntoIterator<Item = usize>) -> usize {
        let mut q = self.initial;
        for s in symbols {
            q = self.trans[q][s];
        }
        q
    }

    /// Standard DFA run over a padded tuple word.
    pub fn accepts(&self, w: &TupleWord) -> Result<bool> {
        if w.system != self.system {
            return Err(Error::SystemMismatch(self.system.name(), w.system.name()));
        }
        if w.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: w.arity() });
        }
        Ok(self.accepting[self.run(w.symbols())])
    }

    /// Acceptance of the padded canonical encodings of a value tuple.
    pub fn accepts_values(&self, values: &[u64]) -> Result<bool> {
        if values.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: values.len() });
        }
        let w = crate::numeration::encode_tuple(values, self.system);
        self.accepts(&w)
    }

    pub(crate) fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::new();
        seen[self.initial] = true;
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            for &t in &self.trans[q] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    pub(crate) fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (q, row) in self.trans.iter().enumerate() {
            for &t in row {
                rev[t].push(q);
            }
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for q in 0..n {
            if self.accepting[q] {
                seen[q] = true;
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// True iff no accepting state is reachable by a path of length >= 1.
    pub fn is_empty(&self) -> bool {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::new();
        for &t in &self.trans[self.initial] {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
        while let Some(q) = queue.pop_front() {
            if self.accepting[q] {
                return false;
            }
            for &t in &self.trans[q] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        true
    }

    /// All accepted words of length in 1..=max_len, as symbol sequences.
    /// Exhaustive; intended for small automata in tests and validation.
    pub fn accepted_words_upto(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(self.initial, Vec::new())];
        // breadth-first by length, lexicographic within a length
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (q, w) in &stack {
                for s in 0..self.num_symbols() {
                    let t = self.trans[*q][s];
                    let mut w2 = w.clone();
                    w2.push(s);
                    if self.accepting[t] {
                        out.push(w2.clone());
                    }
                    next.push((t, w2));
                }
            }
            stack = next;
        }
        out
    }
}

impl Dfao {
    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn num_symbols(&self) -> usize {
        1usize << self.arity
    }

    pub fn state_count(&self) -> usize {
        self.num_states()
    }

    pub fn run(&self, symbols: impl IntoIterator<Item = usize>) -> usize {
        let mut q = self.initial;
        for s in symbols {
            q = self.trans[q][s];
        }
        q
    }

    /// Output after reading the canonical representation of `n`, msd first.
    pub fn output_of(&self, n: u64) -> u32 {
        debug_assert_eq!(self.arity, 1);
        let w = crate::numeration::encode(n, self.system);
        self.output[self.run(w.digits.iter().map(|&d| d as usize))]
    }
}

impl Nfa {
    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn num_symbols(&self) -> usize {
        1usize << self.arity
    }
}

#[cfg(test)]
mod tests;
