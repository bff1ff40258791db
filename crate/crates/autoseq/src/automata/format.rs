//! Text exchange format and DOT export.
//!
//! Native format, one automaton per file, ASCII with LF line endings:
//!
//! ```text
//! system <base2|fib> arity <k>
//! initial <q0>
//! state <id> [accept] [output <sym>]
//! ...
//! trans <from> <d1,...,dk> <to>
//! ...
//! ```
//!
//! States are non-negative integers; `d1` is the digit on track 0.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::numeration::System;

use super::{Dfa, Dfao};

/// Result of parsing the native format: a plain acceptor or an automaton
/// with per-state output.
#[derive(Debug, Clone)]
pub enum Imported {
    Dfa(Dfa),
    Dfao(Dfao),
}

impl Imported {
    pub fn into_dfa(self) -> Result<Dfa> {
        match self {
            Imported::Dfa(d) => Ok(d),
            Imported::Dfao(_) => Err(Error::InvalidInput(
                "expected an acceptor, found an output automaton".into(),
            )),
        }
    }

    pub fn into_dfao(self) -> Result<Dfao> {
        match self {
            Imported::Dfao(d) => Ok(d),
            Imported::Dfa(_) => Err(Error::InvalidInput(
                "expected an output automaton, found an acceptor".into(),
            )),
        }
    }
}

fn digits_label(sym: usize, arity: usize) -> String {
    (0..arity)
        .map(|t| (((sym >> (arity - 1 - t)) & 1).to_string()))
        .collect::<Vec<_>>()
        .join(",")
}

fn export_header(out: &mut String, system: System, arity: usize, initial: usize) {
    let _ = writeln!(out, "system {} arity {}", system.name(), arity);
    let _ = writeln!(out, "initial {initial}");
}

impl Dfa {
    pub fn export_native(&self) -> String {
        let mut out = String::new();
        export_header(&mut out, self.system, self.arity, self.initial);
        for q in 0..self.num_states() {
            if self.accepting[q] {
                let _ = writeln!(out, "state {q} accept");
            } else {
                let _ = writeln!(out, "state {q}");
            }
        }
        for q in 0..self.num_states() {
            for s in 0..self.num_symbols() {
                let _ = writeln!(
                    out,
                    "trans {q} {} {}",
                    digits_label(s, self.arity),
                    self.trans[q][s]
                );
            }
        }
        out
    }

    pub fn export_dot(&self) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
        let _ = writeln!(out, "  __init [shape=point, label=\"\"];");
        for q in 0..self.num_states() {
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  q{q} [shape={shape}, label=\"{q}\"];");
        }
        let _ = writeln!(out, "  __init -> q{};", self.initial);
        for q in 0..self.num_states() {
            for s in 0..self.num_symbols() {
                let _ = writeln!(
                    out,
                    "  q{q} -> q{} [label=\"{}\"];",
                    self.trans[q][s],
                    digits_label(s, self.arity)
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

impl Dfao {
    pub fn export_native(&self) -> String {
        let mut out = String::new();
        export_header(&mut out, self.system, self.arity, self.initial);
        for q in 0..self.num_states() {
            let _ = writeln!(out, "state {q} output {}", self.output[q]);
        }
        for q in 0..self.num_states() {
            for s in 0..self.num_symbols() {
                let _ = writeln!(
                    out,
                    "trans {q} {} {}",
                    digits_label(s, self.arity),
                    self.trans[q][s]
                );
            }
        }
        out
    }

    pub fn export_dot(&self) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
        let _ = writeln!(out, "  __init [shape=point, label=\"\"];");
        for q in 0..self.num_states() {
            let _ = writeln!(out, "  q{q} [shape=circle, label=\"{q}/{}\"];", self.output[q]);
        }
        let _ = writeln!(out, "  __init -> q{};", self.initial);
        for q in 0..self.num_states() {
            for s in 0..self.num_symbols() {
                let _ = writeln!(
                    out,
                    "  q{q} -> q{} [label=\"{}\"];",
                    self.trans[q][s],
                    digits_label(s, self.arity)
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

struct LineCursor<'a> {
    line_no: usize,
    line: &'a str,
    col: usize,
}

impl<'a> LineCursor<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line_no, col: self.col + 1, msg: msg.into() }
    }

    fn next_token(&mut self) -> Option<(usize, &'a str)> {
        let rest = &self.line[self.col..];
        let skip = rest.len() - rest.trim_start().len();
        let start = self.col + skip;
        if start >= self.line.len() {
            return None;
        }
        let tail = &self.line[start..];
        let end = tail.find(char::is_whitespace).unwrap_or(tail.len());
        self.col = start + end;
        Some((start, &tail[..end]))
    }

    fn expect_token(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next_token().ok_or_else(|| self.err(format!("expected {what}")))
    }
}

/// Parse the native exchange format. Reports parse errors with line and
/// column, rejects transitions on undeclared states, duplicate
/// transitions, and non-total transition tables.
pub fn import_native(text: &str) -> Result<Imported> {
    let mut system: Option<System> = None;
    let mut arity = 0usize;
    let mut initial_id: Option<u64> = None;
    let mut initial_line = 0usize;
    let mut states: HashMap<u64, usize> = HashMap::new();
    let mut accept_flags: Vec<bool> = Vec::new();
    let mut outputs: Vec<Option<u32>> = Vec::new();
    let mut trans_entries: Vec<(usize, usize, usize, usize)> = Vec::new(); // from, sym, to, line
    let mut last_line = 0usize;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let mut cur = LineCursor { line_no, line: raw_line, col: 0 };
        let Some((pos, keyword)) = cur.next_token() else { continue };
        match keyword {
            "system" => {
                let (p, name) = cur.expect_token("numeration system")?;
                let sys = System::from_name(name).ok_or_else(|| Error::Parse {
                    line: line_no,
                    col: p + 1,
                    msg: format!("unknown system {name:?}"),
                })?;
                let (p, kw) = cur.expect_token("'arity'")?;
                if kw != "arity" {
                    return Err(Error::Parse {
                        line: line_no,
                        col: p + 1,
                        msg: format!("expected 'arity', found {kw:?}"),
                    });
                }
                let (p, k) = cur.expect_token("arity value")?;
                arity = k.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    col: p + 1,
                    msg: format!("invalid arity {k:?}"),
                })?;
                system = Some(sys);
            }
            "initial" => {
                let (p, id) = cur.expect_token("initial state id")?;
                initial_id = Some(id.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    col: p + 1,
                    msg: format!("invalid state id {id:?}"),
                })?);
                initial_line = line_no;
            }
            "state" => {
                let (p, id) = cur.expect_token("state id")?;
                let id: u64 = id.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    col: p + 1,
                    msg: format!("invalid state id {id:?}"),
                })?;
                if states.contains_key(&id) {
                    return Err(Error::Parse {
                        line: line_no,
                        col: p + 1,
                        msg: format!("duplicate state {id}"),
                    });
                }
                states.insert(id, states.len());
                let mut accept = false;
                let mut output = None;
                while let Some((p, tok)) = cur.next_token() {
                    match tok {
                        "accept" => accept = true,
                        "output" => {
                            let (p2, v) = cur.expect_token("output symbol")?;
                            output = Some(v.parse().map_err(|_| Error::Parse {
                                line: line_no,
                                col: p2 + 1,
                                msg: format!("invalid output {v:?}"),
                            })?);
                        }
                        other => {
                            return Err(Error::Parse {
                                line: line_no,
                                col: p + 1,
                                msg: format!("unexpected token {other:?}"),
                            })
                        }
                    }
                }
                accept_flags.push(accept);
                outputs.push(output);
            }
            "trans" => {
                let (p, from) = cur.expect_token("source state")?;
                let from_id: u64 = from.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    col: p + 1,
                    msg: format!("invalid state id {from:?}"),
                })?;
                let from = *states.get(&from_id).ok_or(Error::Parse {
                    line: line_no,
                    col: p + 1,
                    msg: format!("transition on unknown state {from_id}"),
                })?;
                let (p, label) = cur.expect_token("digit label")?;
                let parts: Vec<&str> = label.split(',').collect();
                if parts.len() != arity {
                    return Err(Error::Parse {
                        line: line_no,
                        col: p + 1,
                        msg: format!("expected {arity} digits, found {}", parts.len()),
                    });
                }
                let mut sym = 0usize;
                for (t, d) in parts.iter().enumerate() {
                    let b: usize = match *d {
                        "0" => 0,
                        "1" => 1,
                        other => {
                            return Err(Error::Parse {
                                line: line_no,
                                col: p + 1,
                                msg: format!("invalid digit {other:?}"),
                            })
                        }
                    };
                    sym |= b << (arity - 1 - t);
                }
                let (p2, to) = cur.expect_token("target state")?;
                let to_id: u64 = to.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    col: p2 + 1,
                    msg: format!("invalid state id {to:?}"),
                })?;
                let to = *states.get(&to_id).ok_or(Error::Parse {
                    line: line_no,
                    col: p2 + 1,
                    msg: format!("transition on unknown state {to_id}"),
                })?;
                if trans_entries.iter().any(|&(f, s, _, _)| f == from && s == sym) {
                    return Err(Error::Parse {
                        line: line_no,
                        col: p + 1,
                        msg: format!("duplicate transition from {from_id} on {label}"),
                    });
                }
                trans_entries.push((from, sym, to, line_no));
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    col: pos + 1,
                    msg: format!("unknown keyword {other:?}"),
                })
            }
        }
    }

    let system = system.ok_or(Error::Parse {
        line: last_line,
        col: 1,
        msg: "missing 'system' line".into(),
    })?;
    let initial_id = initial_id.ok_or(Error::Parse {
        line: last_line,
        col: 1,
        msg: "missing 'initial' line".into(),
    })?;
    let initial = *states.get(&initial_id).ok_or(Error::Parse {
        line: initial_line,
        col: 9,
        msg: format!("initial state {initial_id} not declared"),
    })?;
    let n = states.len();
    let syms = 1usize << arity;
    let mut trans = vec![vec![usize::MAX; syms]; n];
    for (from, sym, to, _) in &trans_entries {
        trans[*from][*sym] = *to;
    }
    for (q, row) in trans.iter().enumerate() {
        for (s, &t) in row.iter().enumerate() {
            if t == usize::MAX {
                return Err(Error::Parse {
                    line: last_line,
                    col: 1,
                    msg: format!(
                        "transition table not total: state index {q} has no transition on {}",
                        digits_label(s, arity)
                    ),
                });
            }
        }
    }

    let any_output = outputs.iter().any(|o| o.is_some());
    let any_accept = accept_flags.iter().any(|&a| a);
    if any_output {
        if any_accept {
            return Err(Error::Parse {
                line: last_line,
                col: 1,
                msg: "automaton mixes accept flags and outputs".into(),
            });
        }
        let output = outputs
            .iter()
            .map(|o| {
                o.ok_or(Error::Parse {
                    line: last_line,
                    col: 1,
                    msg: "output missing on some states".into(),
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(Imported::Dfao(Dfao { system, arity, initial, output, trans }))
    } else {
        Ok(Imported::Dfa(Dfa { system, arity, initial, accepting: accept_flags, trans }))
    }
}
