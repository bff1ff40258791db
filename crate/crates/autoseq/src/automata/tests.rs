use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::automata::ops::*;
use crate::automata::{import_native, BoolOp, Dfa, Nfa, DEFAULT_BUDGET};
use crate::numeration::System;

fn random_dfa(rng: &mut StdRng, arity: usize) -> Dfa {
    let n = rng.gen_range(2..=5);
    let syms = 1usize << arity;
    let trans = (0..n)
        .map(|_| (0..syms).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let accepting = (0..n).map(|_| rng.gen_bool(0.4)).collect();
    Dfa { system: System::Base2, arity, initial: 0, accepting, trans }
}

fn random_nfa(rng: &mut StdRng, arity: usize) -> Nfa {
    let n = rng.gen_range(2..=5);
    let syms = 1usize << arity;
    let trans = (0..n)
        .map(|_| {
            (0..syms)
                .map(|_| {
                    (0..n).filter(|_| rng.gen_bool(0.3)).collect::<Vec<usize>>()
                })
                .collect()
        })
        .collect();
    let accepting = (0..n).map(|_| rng.gen_bool(0.4)).collect();
    let initial = (0..n).filter(|_| rng.gen_bool(0.5)).collect::<Vec<_>>();
    let initial = if initial.is_empty() { vec![0] } else { initial };
    Nfa { system: System::Base2, arity, initial, accepting, trans }
}

/// membership of every word of length 1..=max_len, as a bit-vector oracle
fn memberships(d: &Dfa, max_len: usize) -> Vec<bool> {
    let mut out = Vec::new();
    let syms = d.num_symbols();
    let mut frontier = vec![(d.initial, ())];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * syms);
        for (q, _) in &frontier {
            for s in 0..syms {
                let t = d.trans[*q][s];
                out.push(d.accepting[t]);
                next.push((t, ()));
            }
        }
        frontier = next;
    }
    out
}

fn nfa_memberships(n: &Nfa, max_len: usize) -> Vec<bool> {
    let syms = n.num_symbols();
    let mut out = Vec::new();
    let mut init: Vec<usize> = n.initial.clone();
    init.sort_unstable();
    init.dedup();
    let mut frontier = vec![init];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * syms);
        for set in &frontier {
            for s in 0..syms {
                let mut t: Vec<usize> =
                    set.iter().flat_map(|&q| n.trans[q][s].iter().copied()).collect();
                t.sort_unstable();
                t.dedup();
                out.push(t.iter().any(|&q| n.accepting[q]));
                next.push(t);
            }
        }
        frontier = next;
    }
    out
}

#[test]
fn product_matches_boolean_of_memberships() {
    let mut rng = StdRng::seed_from_u64(7);
    for trial in 0..100 {
        let arity = if trial % 2 == 0 { 1 } else { 2 };
        let a = random_dfa(&mut rng, arity);
        let b = random_dfa(&mut rng, arity);
        let ma = memberships(&a, 6);
        let mb = memberships(&b, 6);
        for op in [BoolOp::And, BoolOp::Or, BoolOp::Implies, BoolOp::Iff] {
            let p = product(&a, &b, op).unwrap();
            let mp = memberships(&p, 6);
            for i in 0..ma.len() {
                assert_eq!(mp[i], op.apply(ma[i], mb[i]), "op {op:?} word {i}");
            }
        }
    }
}

#[test]
fn product_same_and_contradiction() {
    let mut rng = StdRng::seed_from_u64(8);
    let a = random_dfa(&mut rng, 1);
    let same = product(&a, &a, BoolOp::And).unwrap();
    assert!(equivalent(&a, &same).unwrap());
    let contra = product(&a, &complement(&a), BoolOp::And).unwrap();
    assert!(contra.is_empty());
}

#[test]
fn de_morgan_randomized() {
    let mut rng = StdRng::seed_from_u64(9);
    for trial in 0..100 {
        let arity = if trial % 2 == 0 { 1 } else { 2 };
        let a = random_dfa(&mut rng, arity);
        let b = random_dfa(&mut rng, arity);
        let lhs = complement(&product(&a, &b, BoolOp::And).unwrap());
        let rhs = product(&complement(&a), &complement(&b), BoolOp::Or).unwrap();
        assert!(equivalent(&lhs, &rhs).unwrap());
        // exhaustive cross-check on short words
        let ml = memberships(&lhs, 8);
        let mr = memberships(&rhs, 8);
        assert_eq!(ml, mr);
    }
}

#[test]
fn complement_involution_and_partition() {
    let mut rng = StdRng::seed_from_u64(10);
    for _ in 0..20 {
        let a = random_dfa(&mut rng, 1);
        assert!(equivalent(&a, &complement(&complement(&a))).unwrap());
        let ma = memberships(&a, 8);
        let mc = memberships(&complement(&a), 8);
        for i in 0..ma.len() {
            assert_ne!(ma[i], mc[i]);
        }
    }
    // complement of the empty language accepts the "0" word
    let empty = Dfa {
        system: System::Base2,
        arity: 1,
        initial: 0,
        accepting: vec![false],
        trans: vec![vec![0, 0]],
    };
    let c = complement(&empty);
    assert!(c.accepts_values(&[0]).unwrap());
}

#[test]
fn determinize_preserves_language() {
    let mut rng = StdRng::seed_from_u64(11);
    for trial in 0..100 {
        let arity = if trial % 2 == 0 { 1 } else { 2 };
        let n = random_nfa(&mut rng, arity);
        let d = determinize(&n, DEFAULT_BUDGET).unwrap();
        let len = if arity == 1 { 8 } else { 6 };
        assert_eq!(nfa_memberships(&n, len), memberships(&d, len));
        // viewing a DFA as an NFA and determinizing keeps the language
        let d2 = determinize(
            &Nfa {
                system: d.system,
                arity: d.arity,
                initial: vec![d.initial],
                accepting: d.accepting.clone(),
                trans: d
                    .trans
                    .iter()
                    .map(|row| row.iter().map(|&t| vec![t]).collect())
                    .collect(),
            },
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert!(equivalent(&d, &d2).unwrap());
    }
}

#[test]
fn determinize_empty_nfa_is_dead_state() {
    let n = Nfa {
        system: System::Base2,
        arity: 1,
        initial: vec![],
        accepting: vec![],
        trans: vec![],
    };
    let d = determinize(&n, DEFAULT_BUDGET).unwrap();
    assert_eq!(d.num_states(), 1);
    assert!(!d.accepting[0]);
    assert!(d.is_empty());
}

#[test]
fn minimize_idempotent_and_language_preserving() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..100 {
        let a = random_dfa(&mut rng, 1);
        let m = minimize(&a);
        assert_eq!(memberships(&a, 8), memberships(&m, 8));
        let mm = minimize(&m);
        assert_eq!(m.num_states(), mm.num_states());
        assert_eq!(m, mm, "canonical form must be a fixpoint");
    }
}

#[test]
fn minimized_equality_relation_has_two_states() {
    // two-track base-2 equality: stay while digits agree
    let eq = Dfa {
        system: System::Base2,
        arity: 2,
        initial: 0,
        accepting: vec![true, false],
        trans: vec![vec![0, 1, 1, 0], vec![1, 1, 1, 1]],
    };
    let m = minimize(&eq);
    assert_eq!(m.num_states(), 2);
    assert!(m.accepts_values(&[5, 5]).unwrap());
    assert!(!m.accepts_values(&[5, 6]).unwrap());
}

#[test]
fn projection_of_equality_accepts_everything() {
    let eq = Dfa {
        system: System::Base2,
        arity: 2,
        initial: 0,
        accepting: vec![true, false],
        trans: vec![vec![0, 1, 1, 0], vec![1, 1, 1, 1]],
    };
    // project track 1: exists y with x = y
    let p = project_existential(&eq, 1, DEFAULT_BUDGET).unwrap();
    for x in 0..64u64 {
        assert!(p.accepts_values(&[x]).unwrap());
    }
    // projecting the only track of "x = x" leaves a true sentence
    let p0 = project_existential(&p, 0, DEFAULT_BUDGET).unwrap();
    assert_eq!(p0.arity, 0);
    assert!(!p0.is_empty());
}

#[test]
fn projection_finds_longer_witness() {
    // x = 2y as a one-column delay: the current y digit must repeat the
    // previous x digit, and the final x digit must be 0
    let halve = Dfa {
        system: System::Base2,
        arity: 2, // tracks: x, y
        initial: 0,
        accepting: vec![true, false, false],
        trans: vec![
            // state = previous x digit; symbols xy: 00,01,10,11
            vec![0, 2, 1, 2],
            vec![2, 0, 2, 1],
            vec![2, 2, 2, 2],
        ],
    };
    for y in 0..40u64 {
        assert!(halve.accepts_values(&[2 * y, y]).unwrap(), "{y}");
        assert!(!halve.accepts_values(&[2 * y + 1, y]).unwrap());
    }
    // project over y ("exists y: x = 2y") -> exactly the even numbers
    let even = project_existential(&halve, 1, DEFAULT_BUDGET).unwrap();
    for x in 0..=64u64 {
        assert_eq!(even.accepts_values(&[x]).unwrap(), x % 2 == 0, "{x}");
    }
    // project over x ("exists x: x = 2y") -> everything; the witness x is
    // one digit longer than y, so this exercises the saturation step
    let all = project_existential(&halve, 0, DEFAULT_BUDGET).unwrap();
    for y in 0..128u64 {
        assert!(all.accepts_values(&[y]).unwrap(), "{y}");
    }
    // track swap gives the doubling relation y = 2x
    let dbl = permute_tracks(&halve, &[1, 0]);
    for x in 0..40u64 {
        assert!(dbl.accepts_values(&[x, 2 * x]).unwrap());
    }
}

#[test]
fn zero_closure_detected_and_restored() {
    // singleton automata are zero-closed by construction
    for sys in [System::Base2, System::Fibonacci] {
        for v in [0u64, 1, 5, 12] {
            assert!(is_zero_closed(&singleton(sys, v)));
        }
        assert!(is_zero_closed(&valid_tuple_shape(sys, 2)));
    }
    // canonical word shape is intentionally not closed
    assert!(!is_zero_closed(&canonical_word_shape(System::Base2)));
    let closed = close_leading_zeros(&canonical_word_shape(System::Base2), DEFAULT_BUDGET).unwrap();
    assert!(is_zero_closed(&closed));
    // closing the canonical shape yields all padded representations
    for v in 0..32u64 {
        assert!(closed.accepts_values(&[v]).unwrap());
    }
}

#[test]
fn enumerate_values_in_order() {
    let sys = System::Base2;
    let s3 = singleton(sys, 3);
    let s5 = singleton(sys, 5);
    let s9 = singleton(sys, 9);
    let u = product(&product(&s3, &s5, BoolOp::Or).unwrap(), &s9, BoolOp::Or).unwrap();
    assert_eq!(enumerate_values(&u, 10, DEFAULT_BUDGET).unwrap(), vec![3, 5, 9]);
    assert_eq!(enumerate_values(&u, 2, DEFAULT_BUDGET).unwrap(), vec![3, 5]);
    // empty automaton enumerates nothing
    let none = product(&s3, &s5, BoolOp::And).unwrap();
    assert!(enumerate_accepted(&none, 5, DEFAULT_BUDGET).unwrap().is_empty());
}

#[test]
fn fiber_and_sync_eval_on_equality() {
    let eq = Dfa {
        system: System::Base2,
        arity: 2,
        initial: 0,
        accepting: vec![true, false],
        trans: vec![vec![0, 1, 1, 0], vec![1, 1, 1, 1]],
    };
    let f = fiber(&eq, 1, 5, DEFAULT_BUDGET).unwrap();
    assert_eq!(enumerate_values(&f, 10, DEFAULT_BUDGET).unwrap(), vec![5]);
    assert_eq!(sync_eval(&eq, 0, 7).unwrap(), 7);
    assert_eq!(sync_eval(&eq, 1, 0).unwrap(), 0);
    let pairs = enumerate_accepted(&eq, 4, DEFAULT_BUDGET).unwrap();
    assert_eq!(pairs, vec![vec![0, 0], vec![1, 1], vec![2, 2], vec![3, 3]]);
}

#[test]
fn export_import_round_trip() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..20 {
        let a = minimize(&random_dfa(&mut rng, 2));
        let text = a.export_native();
        let b = import_native(&text).unwrap().into_dfa().unwrap();
        assert_eq!(a.num_states(), b.num_states());
        assert!(equivalent(&a, &b).unwrap());
        assert_eq!(memberships(&a, 8), memberships(&b, 8));
        assert_eq!(text, b.export_native(), "round trip is bit-exact");
    }
}

#[test]
fn dot_export_has_one_label_per_transition() {
    let a = singleton(System::Base2, 2);
    let dot = a.export_dot();
    let edges = dot.lines().filter(|l| l.contains("label=\"") && l.contains("->")).count();
    assert_eq!(edges, a.num_states() * a.num_symbols());
    assert!(dot.contains("doublecircle"));
}

#[test]
fn import_rejects_malformed_input() {
    // transition on unknown state
    let text = "system base2 arity 1\ninitial 0\nstate 0 accept\ntrans 0 0 1\n";
    let err = import_native(text).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("unknown state"), "{msg}");
    assert!(msg.contains("4:"), "should carry the line: {msg}");
    // non-total table
    let text = "system base2 arity 1\ninitial 0\nstate 0 accept\ntrans 0 0 0\n";
    assert!(import_native(text).is_err());
    // bad keyword
    let text = "system base2 arity 1\ninitial 0\nstate 0\nfrobnicate\n";
    assert!(import_native(text).is_err());
}
