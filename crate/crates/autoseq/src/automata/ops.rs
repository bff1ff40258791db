//! The automaton algebra: product, complement, cylindrification,
//! projection with leading-zero saturation, subset construction,
//! minimization with canonical state numbering, and enumeration of
//! accepted tuples in value order.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::numeration::{encode, System};

use super::{BoolOp, Dfa, Dfao, Nfa, DEFAULT_BUDGET};

/// Remove bit `i` from `x` (bits above shift down).
fn remove_bit(x: usize, i: usize) -> usize {
    ((x >> (i + 1)) << i) | (x & ((1 << i) - 1))
}

/// Insert bit `b` at position `i` of `x` (bits at and above `i` shift up).
fn insert_bit(x: usize, i: usize, b: usize) -> usize {
    (((x >> i) << (i + 1)) | (b << i)) | (x & ((1 << i) - 1))
}

/// Accepts every word that is a valid padded representation tuple:
/// unconstrained digits in base 2, no track containing the factor "11"
/// in the Fibonacci system.
pub fn valid_tuple_shape(system: System, arity: usize) -> Dfa {
    match system {
        System::Base2 => Dfa {
            system,
            arity,
            initial: 0,
            accepting: vec![true],
            trans: vec![vec![0; 1 << arity]],
        },
        System::Fibonacci => {
            // state = bitmask of tracks whose previous digit was 1; extra dead state
            let syms = 1usize << arity;
            let dead = syms;
            let mut trans = Vec::with_capacity(syms + 1);
            for prev in 0..syms {
                let row = (0..syms)
                    .map(|s| if prev & s != 0 { dead } else { s })
                    .collect();
                trans.push(row);
            }
            trans.push(vec![dead; syms]);
            let mut accepting = vec![true; syms];
            accepting.push(false);
            minimize(&Dfa { system, arity, initial: 0, accepting, trans })
        }
    }
}

/// Accepts exactly the canonical words: "0", or a word starting with 1
/// (with no "11" factor in the Fibonacci system). Deliberately not
/// leading-zero closed; used to enumerate values without duplicates.
pub fn canonical_word_shape(system: System) -> Dfa {
    // states: 0 start, 1 after exactly "0", 2 after last digit 1,
    // 3 after last digit 0 (past the leading 1), 4 dead
    let one_after_one = match system {
        System::Base2 => 2,
        System::Fibonacci => 4,
    };
    Dfa {
        system,
        arity: 1,
        initial: 0,
        accepting: vec![false, true, true, true, false],
        trans: vec![
            vec![1, 2],
            vec![4, 4],
            vec![3, one_after_one],
            vec![3, 2],
            vec![4, 4],
        ],
    }
}

/// Accepts exactly the padded representations `0^j . encode(value)`.
pub fn singleton(system: System, value: u64) -> Dfa {
    if value == 0 {
        // all-zero words of length >= 1
        return Dfa {
            system,
            arity: 1,
            initial: 0,
            accepting: vec![true, false],
            trans: vec![vec![0, 1], vec![1, 1]],
        };
    }
    let digits = encode(value, system).digits;
    let m = digits.len();
    // state 0 = padding; state i in 1..=m = matched i digits; state m+1 = dead
    let dead = m + 1;
    let mut trans = Vec::with_capacity(m + 2);
    trans.push(vec![0, 1]); // digits[0] is always 1 for value > 0
    for i in 1..m {
        let mut row = vec![dead, dead];
        row[digits[i] as usize] = i + 1;
        trans.push(row);
    }
    trans.push(vec![dead, dead]);
    trans.push(vec![dead, dead]);
    let mut accepting = vec![false; m + 2];
    accepting[m] = true;
    Dfa { system, arity: 1, initial: 0, accepting, trans }
}

/// Product construction under a boolean connective. Tracks are identified
/// positionally; the result is restricted to valid representation tuples
/// and minimized.
pub fn product(a: &Dfa, b: &Dfa, op: BoolOp) -> Result<Dfa> {
    if a.system != b.system {
        return Err(Error::SystemMismatch(a.system.name(), b.system.name()));
    }
    if a.arity != b.arity {
        return Err(Error::ArityMismatch { expected: a.arity, got: b.arity });
    }
    let raw = raw_product(a, b, op);
    let shaped = match a.system {
        System::Base2 => raw,
        System::Fibonacci => {
            let shape = valid_tuple_shape(a.system, a.arity);
            raw_product(&raw, &shape, BoolOp::And)
        }
    };
    Ok(minimize(&shaped))
}

fn raw_product(a: &Dfa, b: &Dfa, op: BoolOp) -> Dfa {
    let syms = a.num_symbols();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    let start = (a.initial, b.initial);
    index.insert(start, 0);
    order.push(start);
    let mut trans: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let (qa, qb) = order[i];
        let mut row = Vec::with_capacity(syms);
        for s in 0..syms {
            let t = (a.trans[qa][s], b.trans[qb][s]);
            let id = *index.entry(t).or_insert_with(|| {
                order.push(t);
                order.len() - 1
            });
            row.push(id);
        }
        trans.push(row);
        i += 1;
    }
    let accepting = order
        .iter()
        .map(|&(qa, qb)| op.apply(a.accepting[qa], b.accepting[qb]))
        .collect();
    Dfa { system: a.system, arity: a.arity, initial: 0, accepting, trans }
}

/// Set complement within the space of valid padded representation tuples.
pub fn complement(a: &Dfa) -> Dfa {
    let flipped = Dfa {
        system: a.system,
        arity: a.arity,
        initial: a.initial,
        accepting: a.accepting.iter().map(|&x| !x).collect(),
        trans: a.trans.clone(),
    };
    match a.system {
        System::Base2 => minimize(&flipped),
        System::Fibonacci => {
            let shape = valid_tuple_shape(a.system, a.arity);
            minimize(&raw_product(&flipped, &shape, BoolOp::And))
        }
    }
}

/// Cylindrification: insert an unconstrained track at position `pos`.
pub fn insert_track(a: &Dfa, pos: usize) -> Dfa {
    assert!(pos <= a.arity);
    let arity = a.arity + 1;
    let bit = arity - 1 - pos;
    let trans = a
        .trans
        .iter()
        .map(|row| (0..1usize << arity).map(|s| row[remove_bit(s, bit)]).collect())
        .collect();
    Dfa {
        system: a.system,
        arity,
        initial: a.initial,
        accepting: a.accepting.clone(),
        trans,
    }
}

/// Reorder tracks: result track `i` carries input track `perm[i]`.
pub fn permute_tracks(a: &Dfa, perm: &[usize]) -> Dfa {
    assert_eq!(perm.len(), a.arity);
    let k = a.arity;
    let trans = a
        .trans
        .iter()
        .map(|row| {
            (0..1usize << k)
                .map(|s| {
                    let mut old = 0usize;
                    for (new_t, &old_t) in perm.iter().enumerate() {
                        let b = (s >> (k - 1 - new_t)) & 1;
                        old |= b << (k - 1 - old_t);
                    }
                    row[old]
                })
                .collect()
        })
        .collect();
    Dfa {
        system: a.system,
        arity: k,
        initial: a.initial,
        accepting: a.accepting.clone(),
        trans,
    }
}

/// Existentially quantify one track: erase it, saturate the initial states
/// so a witness may use more leading digits than the remaining tracks,
/// then determinize and minimize.
pub fn project_existential(a: &Dfa, track: usize, budget: usize) -> Result<Dfa> {
    if track >= a.arity {
        return Err(Error::UnknownTrack(track));
    }
    let bit = a.arity - 1 - track;
    let arity = a.arity - 1;
    let syms = 1usize << arity;

    // initial saturation: follow columns that are all-zero on the
    // remaining tracks, with either digit on the erased track
    let mut init_set = vec![false; a.num_states()];
    let mut queue = VecDeque::new();
    init_set[a.initial] = true;
    queue.push_back(a.initial);
    while let Some(q) = queue.pop_front() {
        for b in 0..2usize {
            let t = a.trans[q][insert_bit(0, bit, b)];
            if !init_set[t] {
                init_set[t] = true;
                queue.push_back(t);
            }
        }
    }
    let initial: Vec<usize> =
        (0..a.num_states()).filter(|&q| init_set[q]).collect();

    let trans = a
        .trans
        .iter()
        .map(|row| {
            (0..syms)
                .map(|s| {
                    let mut ts = vec![
                        row[insert_bit(s, bit, 0)],
                        row[insert_bit(s, bit, 1)],
                    ];
                    ts.sort_unstable();
                    ts.dedup();
                    ts
                })
                .collect()
        })
        .collect();
    let nfa = Nfa {
        system: a.system,
        arity,
        initial,
        accepting: a.accepting.clone(),
        trans,
    };
    Ok(minimize(&determinize(&nfa, budget)?))
}

/// Subset construction. The empty subset becomes the dead state, keeping
/// the result total. Errors out when the state budget is exceeded.
pub fn determinize(n: &Nfa, budget: usize) -> Result<Dfa> {
    let syms = n.num_symbols();
    let mut init: Vec<usize> = n.initial.clone();
    init.sort_unstable();
    init.dedup();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut order: Vec<Vec<usize>> = Vec::new();
    index.insert(init.clone(), 0);
    order.push(init);
    let mut trans: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let current = order[i].clone();
        let mut row = Vec::with_capacity(syms);
        for s in 0..syms {
            let mut next: Vec<usize> = current
                .iter()
                .flat_map(|&q| n.trans[q][s].iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if order.len() >= budget {
                        return Err(Error::StateBudget { budget, during: "determinization" });
                    }
                    let id = order.len();
                    index.insert(next.clone(), id);
                    order.push(next);
                    id
                }
            };
            row.push(id);
        }
        trans.push(row);
        i += 1;
    }
    let accepting = order
        .iter()
        .map(|set| set.iter().any(|&q| n.accepting[q]))
        .collect();
    Ok(Dfa { system: n.system, arity: n.arity, initial: 0, accepting, trans })
}

/// Hopcroft-style partition refinement followed by a breadth-first
/// renumbering from the initial state, so equal languages yield
/// byte-identical exports.
pub fn minimize(a: &Dfa) -> Dfa {
    let (classes, n_classes) = refine_partition(a, &a.accepting.iter().map(|&b| b as u32).collect::<Vec<_>>());
    renumber(a.system, a.arity, a.initial, &classes, n_classes, &a.trans, |q| {
        a.accepting[q]
    })
}

/// Minimize a DFAO; the initial partition separates output symbols.
pub fn minimize_dfao(a: &Dfao) -> Dfao {
    let as_dfa = Dfa {
        system: a.system,
        arity: a.arity,
        initial: a.initial,
        accepting: vec![false; a.num_states()],
        trans: a.trans.clone(),
    };
    let (classes, n_classes) = refine_partition(&as_dfa, &a.output);
    let d = renumber(a.system, a.arity, a.initial, &classes, n_classes, &a.trans, |_| false);
    let mut output = vec![0u32; d.num_states()];
    // d's states are classes renumbered; recover outputs via any member
    // by re-deriving the renumbering map
    let map = renumber_map(a.initial, &classes, n_classes, &a.trans, a.num_symbols());
    for (q, &c) in classes.iter().enumerate() {
        if let Some(&new_id) = map.get(&c) {
            output[new_id] = a.output[q];
        }
    }
    Dfao {
        system: a.system,
        arity: a.arity,
        initial: d.initial,
        output,
        trans: d.trans,
    }
}

/// Moore refinement over reachable states; unreachable states are assigned
/// to a class that `renumber` will drop.
fn refine_partition(a: &Dfa, colors: &[u32]) -> (Vec<usize>, usize) {
    let n = a.num_states();
    let syms = a.num_symbols();
    let reach = a.reachable();

    // initial classes: one per color among reachable states
    let mut class = vec![usize::MAX; n];
    let mut color_map: HashMap<u32, usize> = HashMap::new();
    let mut n_classes = 0usize;
    for q in 0..n {
        if reach[q] {
            let c = *color_map.entry(colors[q]).or_insert_with(|| {
                n_classes += 1;
                n_classes - 1
            });
            class[q] = c;
        }
    }
    loop {
        let mut sig_map: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut new_class = vec![usize::MAX; n];
        let mut count = 0usize;
        for q in 0..n {
            if !reach[q] {
                continue;
            }
            let mut sig = Vec::with_capacity(syms + 1);
            sig.push(class[q]);
            for s in 0..syms {
                sig.push(class[a.trans[q][s]]);
            }
            let c = *sig_map.entry(sig).or_insert_with(|| {
                count += 1;
                count - 1
            });
            new_class[q] = c;
        }
        if count == n_classes {
            return (new_class, count);
        }
        class = new_class;
        n_classes = count;
    }
}

fn renumber_map(
    initial: usize,
    classes: &[usize],
    n_classes: usize,
    trans: &[Vec<usize>],
    syms: usize,
) -> HashMap<usize, usize> {
    // representative per class
    let mut rep = vec![usize::MAX; n_classes];
    for (q, &c) in classes.iter().enumerate() {
        if c != usize::MAX && rep[c] == usize::MAX {
            rep[c] = q;
        }
    }
    let mut map = HashMap::new();
    let mut order = Vec::new();
    let c0 = classes[initial];
    map.insert(c0, 0);
    order.push(c0);
    let mut i = 0;
    while i < order.len() {
        let q = rep[order[i]];
        for s in 0..syms {
            let c = classes[trans[q][s]];
            if !map.contains_key(&c) {
                map.insert(c, order.len());
                order.push(c);
            }
        }
        i += 1;
    }
    map
}

fn renumber(
    system: System,
    arity: usize,
    initial: usize,
    classes: &[usize],
    n_classes: usize,
    trans: &[Vec<usize>],
    accepting: impl Fn(usize) -> bool,
) -> Dfa {
    let syms = 1usize << arity;
    let map = renumber_map(initial, classes, n_classes, trans, syms);
    let mut rep = vec![usize::MAX; n_classes];
    for (q, &c) in classes.iter().enumerate() {
        if c != usize::MAX && rep[c] == usize::MAX {
            rep[c] = q;
        }
    }
    let n_new = map.len();
    let mut new_trans = vec![Vec::new(); n_new];
    let mut new_acc = vec![false; n_new];
    for (&c, &id) in &map {
        let q = rep[c];
        new_trans[id] = (0..syms).map(|s| map[&classes[trans[q][s]]]).collect();
        new_acc[id] = accepting(q);
    }
    Dfa { system, arity, initial: 0, accepting: new_acc, trans: new_trans }
}

/// Language equality on words of length >= 1.
pub fn equivalent(a: &Dfa, b: &Dfa) -> Result<bool> {
    if a.system != b.system {
        return Err(Error::SystemMismatch(a.system.name(), b.system.name()));
    }
    if a.arity != b.arity {
        return Err(Error::ArityMismatch { expected: a.arity, got: b.arity });
    }
    Ok(raw_product(a, b, BoolOp::Xor).is_empty())
}

/// True iff prepending one all-zero column never changes acceptance.
pub fn is_zero_closed(a: &Dfa) -> bool {
    let shifted = Dfa {
        system: a.system,
        arity: a.arity,
        initial: a.trans[a.initial][0],
        accepting: a.accepting.clone(),
        trans: a.trans.clone(),
    };
    equivalent(a, &shifted).expect("same automaton shape")
}

/// Close a freshly built automaton under adding and removing leading
/// all-zero columns. The initial state set is saturated along zero
/// columns (removal direction) and a fresh padding state that loops on
/// the zero column is prepended (addition direction).
pub fn close_leading_zeros(a: &Dfa, budget: usize) -> Result<Dfa> {
    let mut init_set = vec![false; a.num_states()];
    let mut queue = VecDeque::new();
    init_set[a.initial] = true;
    queue.push_back(a.initial);
    while let Some(q) = queue.pop_front() {
        let t = a.trans[q][0];
        if !init_set[t] {
            init_set[t] = true;
            queue.push_back(t);
        }
    }
    let saturated: Vec<usize> = (0..a.num_states()).filter(|&q| init_set[q]).collect();
    let pad = a.num_states();
    let mut trans: Vec<Vec<Vec<usize>>> = a
        .trans
        .iter()
        .map(|row| row.iter().map(|&t| vec![t]).collect())
        .collect();
    let mut pad_row: Vec<Vec<usize>> = (0..a.num_symbols())
        .map(|s| {
            let mut ts: Vec<usize> = saturated.iter().map(|&q| a.trans[q][s]).collect();
            if s == 0 {
                ts.push(pad);
            }
            ts.sort_unstable();
            ts.dedup();
            ts
        })
        .collect();
    trans.push(std::mem::take(&mut pad_row));
    let mut accepting = a.accepting.clone();
    accepting.push(false);
    let nfa = Nfa {
        system: a.system,
        arity: a.arity,
        initial: vec![pad],
        accepting,
        trans,
    };
    Ok(minimize(&determinize(&nfa, budget)?))
}

/// Constrain `track` of `a` to the canonical padded representation of
/// `value`, then project the track away.
pub fn fiber(a: &Dfa, track: usize, value: u64, budget: usize) -> Result<Dfa> {
    if track >= a.arity {
        return Err(Error::UnknownTrack(track));
    }
    let mut sel = singleton(a.system, value);
    for pos in 0..a.arity {
        if pos != track {
            sel = insert_track(&sel, pos);
        }
    }
    let constrained = product(a, &sel, BoolOp::And)?;
    project_existential(&constrained, track, budget)
}

/// The first `limit` accepted values of an arity-1 automaton in increasing
/// order, reading only canonical words so each value appears once.
pub fn enumerate_values(a: &Dfa, limit: usize, budget: usize) -> Result<Vec<u64>> {
    if a.arity != 1 {
        return Err(Error::ArityMismatch { expected: 1, got: a.arity });
    }
    let p = product(a, &canonical_word_shape(a.system), BoolOp::And)?;
    let _ = budget;
    let reach = p.reachable();
    let co = p.coreachable();
    let live: Vec<bool> = reach.iter().zip(&co).map(|(r, c)| *r && *c).collect();
    let infinite = has_live_cycle(&p, &live);

    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    // feasible[r] = states from which an accepting state is exactly r steps away
    let mut feasible: Vec<Vec<bool>> = vec![p.accepting.clone()];
    let mut len = 1usize;
    loop {
        if out.len() >= limit {
            break;
        }
        if !infinite && len > p.num_states() {
            break;
        }
        while feasible.len() < len + 1 {
            let prev = feasible.last().unwrap();
            let next: Vec<bool> = (0..p.num_states())
                .map(|q| p.trans[q].iter().any(|&t| prev[t]))
                .collect();
            feasible.push(next);
        }
        enumerate_length(&p, len, &feasible, limit, &mut out)?;
        len += 1;
    }
    Ok(out)
}

fn enumerate_length(
    p: &Dfa,
    len: usize,
    feasible: &[Vec<bool>],
    limit: usize,
    out: &mut Vec<u64>,
) -> Result<()> {
    let mut digits: Vec<u8> = Vec::with_capacity(len);
    fn rec(
        p: &Dfa,
        q: usize,
        remaining: usize,
        feasible: &[Vec<bool>],
        digits: &mut Vec<u8>,
        limit: usize,
        out: &mut Vec<u64>,
    ) -> Result<()> {
        if out.len() >= limit {
            return Ok(());
        }
        if remaining == 0 {
            if p.accepting[q] {
                let w = crate::numeration::DigitWord::new(p.system, digits.clone())?;
                out.push(crate::numeration::decode(&w)?);
            }
            return Ok(());
        }
        for d in 0..2usize {
            let t = p.trans[q][d];
            if feasible[remaining - 1][t] {
                digits.push(d as u8);
                rec(p, t, remaining - 1, feasible, digits, limit, out)?;
                digits.pop();
            }
        }
        Ok(())
    }
    rec(p, p.initial, len, feasible, &mut digits, limit, out)
}

fn has_live_cycle(p: &Dfa, live: &[bool]) -> bool {
    // iterative DFS with colors over the live subgraph
    let n = p.num_states();
    let mut color = vec![0u8; n]; // 0 white, 1 gray, 2 black
    for start in 0..n {
        if !live[start] || color[start] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        color[start] = 1;
        while let Some(&mut (q, ref mut next)) = stack.last_mut() {
            if *next < p.num_symbols() {
                let s = *next;
                *next += 1;
                let t = p.trans[q][s];
                if !live[t] {
                    continue;
                }
                match color[t] {
                    0 => {
                        color[t] = 1;
                        stack.push((t, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                color[q] = 2;
                stack.pop();
            }
        }
    }
    false
}

/// The first `limit` accepted tuples, ordered by the decoded value of
/// track 0 (then recursively by the remaining tracks), duplicates by
/// value suppressed.
pub fn enumerate_accepted(a: &Dfa, limit: usize, budget: usize) -> Result<Vec<Vec<u64>>> {
    if a.arity == 0 {
        return Err(Error::InvalidInput(
            "cannot enumerate an automaton with no tracks".into(),
        ));
    }
    if a.arity == 1 {
        return Ok(enumerate_values(a, limit, budget)?
            .into_iter()
            .map(|v| vec![v])
            .collect());
    }
    let mut head = a.clone();
    for t in (1..a.arity).rev() {
        head = project_existential(&head, t, budget)?;
    }
    let heads = enumerate_values(&head, limit, budget)?;
    let mut out: Vec<Vec<u64>> = Vec::new();
    for v in heads {
        if out.len() >= limit {
            break;
        }
        let f = fiber(a, 0, v, budget)?;
        for rest in enumerate_accepted(&f, limit - out.len(), budget)? {
            let mut tuple = Vec::with_capacity(a.arity);
            tuple.push(v);
            tuple.extend(rest);
            out.push(tuple);
        }
    }
    out.truncate(limit);
    Ok(out)
}

/// For a synchronized 2-track relation, the unique partner of `value` on
/// the other track. Errors when the partner is missing or not unique.
pub fn sync_eval(a: &Dfa, known_track: usize, value: u64) -> Result<u64> {
    if a.arity != 2 {
        return Err(Error::ArityMismatch { expected: 2, got: a.arity });
    }
    if known_track > 1 {
        return Err(Error::UnknownTrack(known_track));
    }
    let base = encode(value, a.system).digits;
    for extra in 0..=40usize {
        let mut digits = vec![0u8; extra];
        digits.extend_from_slice(&base);
        let len = digits.len();
        let sym = |kd: usize, b: usize| -> usize {
            if known_track == 0 {
                (kd << 1) | b
            } else {
                (b << 1) | kd
            }
        };
        // feasible[pos][q]: can reach acceptance consuming digits[pos..]
        let mut feasible = vec![vec![false; a.num_states()]; len + 1];
        feasible[len] = a.accepting.clone();
        for pos in (0..len).rev() {
            let kd = digits[pos] as usize;
            for q in 0..a.num_states() {
                feasible[pos][q] = (0..2).any(|b| feasible[pos + 1][a.trans[q][sym(kd, b)]]);
            }
        }
        if !feasible[0][a.initial] {
            continue;
        }
        let mut q = a.initial;
        let mut partner = Vec::with_capacity(len);
        for pos in 0..len {
            let kd = digits[pos] as usize;
            let choices: Vec<usize> = (0..2)
                .filter(|&b| feasible[pos + 1][a.trans[q][sym(kd, b)]])
                .collect();
            match choices.as_slice() {
                [b] => {
                    partner.push(*b as u8);
                    q = a.trans[q][sym(kd, *b)];
                }
                [_, _] => {
                    return Err(Error::Inconsistency(format!(
                        "relation has multiple partners for value {value}"
                    )))
                }
                _ => unreachable!("feasible[pos] implied a choice"),
            }
        }
        let w = crate::numeration::DigitWord::new(a.system, partner)?;
        return crate::numeration::decode(&w);
    }
    Err(Error::Inconsistency(format!(
        "relation has no partner for value {value}"
    )))
}

/// Convenience wrapper with the default state budget.
pub fn project(a: &Dfa, track: usize) -> Result<Dfa> {
    project_existential(a, track, DEFAULT_BUDGET)
}

/// All values of `free_track` that complete the fixed values on the other
/// tracks to an accepted tuple, up to `value_bound`. Intended for
/// (near-)functional relations; errors out beyond 10_000 completions.
pub fn completions(
    a: &Dfa,
    known: &[(usize, u64)],
    free_track: usize,
    value_bound: u64,
) -> Result<Vec<u64>> {
    if known.len() + 1 != a.arity {
        return Err(Error::ArityMismatch { expected: a.arity, got: known.len() + 1 });
    }
    let mut words: Vec<(usize, Vec<u8>)> = known
        .iter()
        .map(|&(t, v)| (t, encode(v, a.system).digits))
        .collect();
    let len = words
        .iter()
        .map(|(_, w)| w.len())
        .chain(std::iter::once(encode(value_bound, a.system).digits.len()))
        .max()
        .unwrap_or(1);
    for (_, w) in &mut words {
        let mut padded = vec![0u8; len - w.len()];
        padded.append(w);
        *w = padded;
    }
    let k = a.arity;
    let base_syms: Vec<usize> = (0..len)
        .map(|i| {
            words
                .iter()
                .fold(0usize, |acc, (t, w)| acc | ((w[i] as usize) << (k - 1 - t)))
        })
        .collect();
    let free_bit = k - 1 - free_track;

    let mut feasible = vec![vec![false; a.num_states()]; len + 1];
    feasible[len] = a.accepting.clone();
    for pos in (0..len).rev() {
        for q in 0..a.num_states() {
            feasible[pos][q] =
                (0..2).any(|b| feasible[pos + 1][a.trans[q][base_syms[pos] | (b << free_bit)]]);
        }
    }
    let mut out = Vec::new();
    if !feasible[0][a.initial] {
        return Ok(out);
    }
    let mut digits = vec![0u8; len];
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, a.initial, 0)]; // pos, state, next digit
    while let Some((pos, q, b)) = stack.pop() {
        if b >= 2 {
            continue;
        }
        stack.push((pos, q, b + 1));
        let t = a.trans[q][base_syms[pos] | (b << free_bit)];
        if !feasible[pos + 1][t] {
            continue;
        }
        digits[pos] = b as u8;
        if pos + 1 == len {
            if a.accepting[t] {
                let w = crate::numeration::DigitWord::new(a.system, digits.clone())?;
                let v = crate::numeration::decode(&w)?;
                if v <= value_bound {
                    out.push(v);
                }
                if out.len() > 10_000 {
                    return Err(Error::Inconsistency(
                        "relation has too many completions".into(),
                    ));
                }
            }
        } else {
            stack.push((pos + 1, t, 0));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
