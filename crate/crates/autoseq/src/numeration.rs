//! Canonical encoding and decoding of natural numbers in base-2 and
//! Zeckendorf (Fibonacci) numeration, plus tuple alignment by
//! leading-zero padding.
//!
//! Digit words are most-significant-digit first over the alphabet {0, 1}.
//! In the Fibonacci system the digit weights are F_2 = 1, F_3 = 2,
//! F_4 = 3, F_5 = 5, ...; the canonical (Zeckendorf) form of a number has
//! no two adjacent 1 digits and is unique.

use std::fmt;

use crate::error::{Error, Result};

/// The two numeration systems the engine works in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum System {
    Base2,
    Fibonacci,
}

impl System {
    pub fn name(self) -> &'static str {
        match self {
            System::Base2 => "base2",
            System::Fibonacci => "fib",
        }
    }

    pub fn from_name(s: &str) -> Option<System> {
        match s {
            "base2" => Some(System::Base2),
            "fib" | "msd_fib" => Some(System::Fibonacci),
            _ => None,
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// F_j for j >= 2, with F_2 = 1, F_3 = 2 and F_j = F_{j-1} + F_{j-2}.
/// Overflow is a hard error, never a wrap.
pub fn fibonacci_number(j: usize) -> Result<u64> {
    if j < 2 {
        return Err(Error::InvalidInput(format!(
            "fibonacci_number index must be >= 2, got {j}"
        )));
    }
    let (mut a, mut b) = (1u64, 2u64); // F_2, F_3
    if j == 2 {
        return Ok(a);
    }
    for _ in 3..=j {
        let next = a.checked_add(b).ok_or(Error::Overflow)?;
        a = b;
        b = next;
        // after the loop step for index k, a = F_{k-1}, b = F_k
    }
    Ok(a)
}

/// A digit string in a fixed numeration system, most significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitWord {
    pub system: System,
    pub digits: Vec<u8>,
}

impl DigitWord {
    pub fn new(system: System, digits: Vec<u8>) -> Result<DigitWord> {
        if digits.iter().any(|&d| d > 1) {
            return Err(Error::InvalidInput("digits must be 0 or 1".into()));
        }
        Ok(DigitWord { system, digits })
    }

    pub fn from_str(system: System, s: &str) -> Result<DigitWord> {
        let mut digits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => digits.push(0),
                '1' => digits.push(1),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "invalid digit character {c:?}"
                    )))
                }
            }
        }
        Ok(DigitWord { system, digits })
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Canonical representation of `n` in `sys`: ordinary binary expansion for
/// base-2, greedy Zeckendorf expansion for Fibonacci. `encode(0)` is the
/// one-digit word "0".
pub fn encode(n: u64, sys: System) -> DigitWord {
    if n == 0 {
        return DigitWord { system: sys, digits: vec![0] };
    }
    match sys {
        System::Base2 => {
            let bits = 64 - n.leading_zeros() as usize;
            let digits = (0..bits).rev().map(|i| ((n >> i) & 1) as u8).collect();
            DigitWord { system: sys, digits }
        }
        System::Fibonacci => {
            // weights F_2, F_3, ... up to the largest one <= n
            let mut weights = vec![1u64, 2u64];
            loop {
                let k = weights.len();
                let next = weights[k - 1] + weights[k - 2];
                if next > n {
                    break;
                }
                weights.push(next);
            }
            while *weights.last().unwrap() > n {
                weights.pop();
            }
            let mut digits = Vec::with_capacity(weights.len());
            let mut rest = n;
            for &w in weights.iter().rev() {
                if w <= rest {
                    digits.push(1);
                    rest -= w;
                } else {
                    digits.push(0);
                }
            }
            debug_assert_eq!(rest, 0);
            DigitWord { system: sys, digits }
        }
    }
}

/// Weighted digit sum of `w` in its system. Canonicality is not required:
/// non-canonical Fibonacci words decode by the same weight sum.
pub fn decode(w: &DigitWord) -> Result<u64> {
    match w.system {
        System::Base2 => {
            let mut acc: u64 = 0;
            for &d in &w.digits {
                acc = acc.checked_mul(2).ok_or(Error::Overflow)?;
                acc = acc.checked_add(d as u64).ok_or(Error::Overflow)?;
            }
            Ok(acc)
        }
        System::Fibonacci => {
            // least significant digit has weight F_2 = 1
            let (mut w2, mut w3) = (1u64, 2u64);
            let mut acc: u64 = 0;
            for (i, &d) in w.digits.iter().rev().enumerate() {
                if i > 0 {
                    let next = w2.checked_add(w3).ok_or(Error::Overflow)?;
                    w2 = w3;
                    w3 = next;
                }
                if d == 1 {
                    acc = acc.checked_add(w2).ok_or(Error::Overflow)?;
                }
            }
            Ok(acc)
        }
    }
}

/// True iff `w` is exactly the canonical encoding of its value: nonempty,
/// no leading zero unless `w` is the single digit "0", and (Fibonacci) no
/// two adjacent 1 digits.
pub fn is_canonical(w: &DigitWord) -> bool {
    if w.digits.is_empty() {
        return false;
    }
    if w.digits == [0] {
        return true;
    }
    if w.digits[0] != 1 {
        return false;
    }
    if w.system == System::Fibonacci {
        if w.digits.windows(2).any(|p| p == [1, 1]) {
            return false;
        }
    }
    true
}

/// k equal-length tracks over one system, read in parallel column by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleWord {
    pub system: System,
    pub tracks: Vec<DigitWord>,
}

impl TupleWord {
    pub fn arity(&self) -> usize {
        self.tracks.len()
    }

    pub fn len(&self) -> usize {
        self.tracks.first().map_or(0, |t| t.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Column `i` packed into a symbol index: track 0 is the most
    /// significant bit of the symbol.
    pub fn symbol(&self, i: usize) -> usize {
        let k = self.arity();
        self.tracks
            .iter()
            .enumerate()
            .fold(0usize, |acc, (t, w)| acc | ((w.digits[i] as usize) << (k - 1 - t)))
    }

    pub fn symbols(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).map(|i| self.symbol(i))
    }
}

/// Left-pad all words with zeros to a common length. All words must share
/// one system; decoded values are unchanged.
pub fn pad_align(words: &[DigitWord]) -> Result<TupleWord> {
    let system = match words.first() {
        Some(w) => w.system,
        None => return Err(Error::InvalidInput("pad_align of zero words".into())),
    };
    for w in words {
        if w.system != system {
            return Err(Error::SystemMismatch(system.name(), w.system.name()));
        }
    }
    let len = words.iter().map(|w| w.len()).max().unwrap_or(0).max(1);
    let tracks = words
        .iter()
        .map(|w| {
            let mut digits = vec![0u8; len - w.len()];
            digits.extend_from_slice(&w.digits);
            DigitWord { system, digits }
        })
        .collect();
    Ok(TupleWord { system, tracks })
}

/// Pad-align the canonical encodings of a value tuple.
pub fn encode_tuple(values: &[u64], sys: System) -> TupleWord {
    let words: Vec<DigitWord> = values.iter().map(|&v| encode(v, sys)).collect();
    pad_align(&words).expect("single-system words always align")
}
