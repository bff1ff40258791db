//! Arithmetic relation automata for both numeration systems: addition,
//! comparisons, multiplication by a small constant, and the Fibonacci
//! incrementer and shifter.
//!
//! Adders are derived, not transcribed: a most-significant-digit-first
//! carry exploration builds the recognizer of x + y = z directly from the
//! weight recurrences, and every pruned carry state is re-checked
//! symbolically before it is declared dead. `validate_relation` then
//! cross-checks the finished automata against plain integer arithmetic.

use std::collections::HashMap;

use crate::automata::{
    close_leading_zeros, completions, determinize, fiber, insert_track, minimize, product,
    project_existential, valid_tuple_shape, BoolOp, Dfa, Nfa, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::numeration::{decode, encode, DigitWord, System};

/// Comparison relations on decoded values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rel {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Rel {
    pub fn eval(self, a: u64, b: u64) -> bool {
        match self {
            Rel::Eq => a == b,
            Rel::Ne => a != b,
            Rel::Lt => a < b,
            Rel::Le => a <= b,
            Rel::Gt => a > b,
            Rel::Ge => a >= b,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Gt => ">",
            Rel::Ge => ">=",
        }
    }
}

/// Pruning bound on carry coefficients during adder construction.
const CARRY_BOUND: i64 = 8;

/// Digit-sum range of one adder column: dx + dy - dz.
const COL_MIN: i64 = -1;
const COL_MAX: i64 = 2;

/// A carry state provably cannot be completed to a zero residual: for
/// every remaining suffix length, the residual lies outside the reachable
/// range of future digit contributions.
fn base2_carry_dead(r: i64) -> bool {
    if r == 0 {
        return false;
    }
    for len in 0..=64u32 {
        let weight_sum = ((1i128 << len) - 1) as i128; // sum of 2^0..2^{len-1}
        let residual = r as i128 * (1i128 << len);
        // future contribution f satisfies COL_MIN*sum <= f <= COL_MAX*sum
        // and acceptance needs residual + f = 0
        if -residual >= COL_MIN as i128 * weight_sum && -residual <= COL_MAX as i128 * weight_sum {
            return false;
        }
    }
    true
}

/// Residual of carry state (a, b) with `len` columns left is
/// a*F_{len+2} + b*F_{len+1}; the future contribution ranges over
/// [-S, 2S] with S the sum of the remaining weights.
fn fib_carry_dead(a: i64, b: i64) -> bool {
    if a + b == 0 && a == 0 {
        return false;
    }
    let mut f2: i128 = 1; // F_{len+1} as len grows, starting at F_1 = 1
    let mut f3: i128 = 1; // F_{len+2}, starting at F_2 = 1
    let mut sum: i128 = 0; // F_2 + ... + F_{len+1}
    for _ in 0..=64u32 {
        let residual = a as i128 * f3 + b as i128 * f2;
        if -residual >= COL_MIN as i128 * sum && -residual <= COL_MAX as i128 * sum {
            return false;
        }
        sum += f3;
        let next = f2 + f3;
        f2 = f3;
        f3 = next;
    }
    true
}

fn column_digits(sym: usize) -> (i64, i64, i64) {
    let dx = ((sym >> 2) & 1) as i64;
    let dy = ((sym >> 1) & 1) as i64;
    let dz = (sym & 1) as i64;
    (dx, dy, dz)
}

/// Recognizer of padded triples (x, y, z) with x + y = z.
pub fn adder(sys: System) -> Result<Dfa> {
    let raw = match sys {
        System::Base2 => explore_adder(
            sys,
            0i64,
            |r, c| Some(2 * r + c),
            |&r| r == 0,
            |&r| base2_carry_dead(r),
            |&r| r.abs() <= CARRY_BOUND,
        )?,
        System::Fibonacci => explore_adder(
            sys,
            (0i64, 0i64),
            |(a, b), c| Some((a + b + c, a)),
            |&(a, b)| a + b == 0,
            |&(a, b)| fib_carry_dead(a, b),
            |&(a, b)| a.abs() <= CARRY_BOUND && b.abs() <= CARRY_BOUND,
        )?,
    };
    product(&raw, &valid_tuple_shape(sys, 3), BoolOp::And)
}

fn explore_adder<S: Copy + Eq + std::hash::Hash>(
    system: System,
    start: S,
    step: impl Fn(S, i64) -> Option<S>,
    accept: impl Fn(&S) -> bool,
    provably_dead: impl Fn(&S) -> bool,
    within_bound: impl Fn(&S) -> bool,
) -> Result<Dfa> {
    let mut index: HashMap<S, usize> = HashMap::new();
    let mut order: Vec<S> = vec![start];
    index.insert(start, 0);
    let mut rows: Vec<Vec<Option<usize>>> = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let state = order[i];
        let mut row = Vec::with_capacity(8);
        for sym in 0..8usize {
            let (dx, dy, dz) = column_digits(sym);
            let c = dx + dy - dz;
            let next = step(state, c).unwrap();
            if provably_dead(&next) {
                row.push(None);
                continue;
            }
            if !within_bound(&next) {
                // a live state escaped the pruning bound: unsound to drop
                return Err(Error::Inconsistency(
                    "carry state outside pruning bound is not provably dead".into(),
                ));
            }
            let id = *index.entry(next).or_insert_with(|| {
                order.push(next);
                order.len() - 1
            });
            row.push(Some(id));
        }
        rows.push(row);
        i += 1;
    }
    let dead = order.len();
    let trans: Vec<Vec<usize>> = rows
        .into_iter()
        .map(|row| row.into_iter().map(|t| t.unwrap_or(dead)).collect())
        .chain(std::iter::once(vec![dead; 8]))
        .collect();
    let mut accepting: Vec<bool> = order.iter().map(&accept).collect();
    accepting.push(false);
    Ok(Dfa {
        system,
        arity: 3,
        initial: 0,
        accepting,
        trans,
    })
}

/// Recognizer of padded pairs (x, y) with x rel y. Decided by the first
/// differing column, which is value order on canonical words in both
/// systems.
pub fn comparison(sys: System, rel: Rel) -> Result<Dfa> {
    // states: 0 so-far-equal, 1 x < y, 2 x > y
    let outcome_accept = |state: usize| match rel {
        Rel::Eq => state == 0,
        Rel::Ne => state != 0,
        Rel::Lt => state == 1,
        Rel::Le => state != 2,
        Rel::Gt => state == 2,
        Rel::Ge => state != 1,
    };
    let raw = Dfa {
        system: sys,
        arity: 2,
        initial: 0,
        accepting: (0..3).map(outcome_accept).collect(),
        // symbols xy: 00, 01, 10, 11
        trans: vec![vec![0, 1, 2, 0], vec![1, 1, 1, 1], vec![2, 2, 2, 2]],
    };
    product(&raw, &valid_tuple_shape(sys, 2), BoolOp::And)
}

/// Recognizer of pairs (x, y) with y = c * x, folded from c - 1 additions.
pub fn const_multiple(sys: System, c: u64) -> Result<Dfa> {
    if c > 64 {
        return Err(Error::StateBudget { budget: 64, during: "constant multiplication" });
    }
    match c {
        0 => {
            // y = 0: second track all zeros
            let raw = Dfa {
                system: sys,
                arity: 2,
                initial: 0,
                accepting: vec![true, false],
                trans: vec![vec![0, 1, 0, 1], vec![1, 1, 1, 1]],
            };
            product(&raw, &valid_tuple_shape(sys, 2), BoolOp::And)
        }
        1 => comparison(sys, Rel::Eq),
        _ => {
            let add = adder(sys)?;
            let mut acc = comparison(sys, Rel::Eq)?; // (x, t) with t = 1*x
            for _ in 2..=c {
                // tracks (x, t, y): acc(x, t) and x + t = y, then drop t
                let lifted = insert_track(&acc, 2);
                let joined = product(&lifted, &add, BoolOp::And)?;
                acc = project_existential(&joined, 1, DEFAULT_BUDGET)?;
            }
            Ok(acc)
        }
    }
}

/// The Fibonacci incrementer: pairs (x, y) with y = x + 1, built from the
/// two suffix-rewriting identities of Zeckendorf successor formation
/// (x00(10)^i + 1 = x010^{2i} and x0(01)^i + 1 = x010^{2i-1}).
pub fn fib_incrementer() -> Result<Dfa> {
    // pattern over columns (x_digit, y_digit):
    //   [(0,0)|(1,1)]* (0,0)(0,1) alt
    // where alt alternates (1,0),(0,0),(1,0),... and may stop anywhere
    let nfa = Nfa {
        system: System::Fibonacci,
        arity: 2,
        initial: vec![0],
        accepting: vec![false, false, true, true],
        trans: vec![
            // symbols xy: 00, 01, 10, 11
            vec![vec![0, 1], vec![], vec![], vec![0]],
            vec![vec![], vec![2], vec![], vec![]],
            vec![vec![], vec![], vec![3], vec![]],
            vec![vec![2], vec![], vec![], vec![]],
        ],
    };
    let dfa = determinize(&nfa, DEFAULT_BUDGET)?;
    let closed = close_leading_zeros(&dfa, DEFAULT_BUDGET)?;
    product(&closed, &valid_tuple_shape(System::Fibonacci, 2), BoolOp::And)
}

/// The Fibonacci shifter: pairs (n, m) with (m)_F = (n)_F followed by one
/// zero. Each x digit must repeat the previous y digit, and the final y
/// digit is zero.
pub fn fib_shifter() -> Result<Dfa> {
    let raw = Dfa {
        system: System::Fibonacci,
        arity: 2,
        initial: 0,
        accepting: vec![true, false, false],
        trans: vec![
            // state = previous y digit; symbols xy: 00, 01, 10, 11
            vec![0, 1, 2, 2],
            vec![2, 2, 0, 1],
            vec![2, 2, 2, 2],
        ],
    };
    product(&raw, &valid_tuple_shape(System::Fibonacci, 2), BoolOp::And)
}

/// The increment relation derived from the adder by pinning the middle
/// summand to 1; the reference the direct incrementer is checked against.
pub fn adder_increment(sys: System) -> Result<Dfa> {
    fiber(&adder(sys)?, 1, 1, DEFAULT_BUDGET)
}

/// Exhaustive cross-check of a relation automaton against an integer
/// oracle. Arity 2 checks all pairs up to `range`; arity 3 checks all
/// (x, y) up to `range` with the third component up to 2 * range.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checked: u64,
    pub mismatch_count: u64,
    pub mismatches: Vec<Vec<u64>>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.mismatch_count == 0
    }
}

pub fn validate_relation(
    a: &Dfa,
    oracle: impl Fn(&[u64]) -> bool,
    range: u64,
) -> Result<ValidationReport> {
    let mut report = ValidationReport { checked: 0, mismatch_count: 0, mismatches: Vec::new() };
    let mut record = |tuple: &[u64], report: &mut ValidationReport| {
        report.mismatch_count += 1;
        if report.mismatches.len() < 20 {
            report.mismatches.push(tuple.to_vec());
        }
    };
    match a.arity {
        2 => {
            for x in 0..=range {
                for y in 0..=range {
                    let got = a.accepts_values(&[x, y])?;
                    report.checked += 1;
                    if got != oracle(&[x, y]) {
                        record(&[x, y], &mut report);
                    }
                }
            }
        }
        3 => {
            let bound = 2 * range;
            for x in 0..=range {
                for y in 0..=range {
                    let accepted = completions(a, &[(0, x), (1, y)], 2, bound)?;
                    let mut idx = 0;
                    for z in 0..=bound {
                        let got = idx < accepted.len() && accepted[idx] == z;
                        if got {
                            idx += 1;
                        }
                        report.checked += 1;
                        if got != oracle(&[x, y, z]) {
                            record(&[x, y, z], &mut report);
                        }
                    }
                }
            }
        }
        k => {
            return Err(Error::ArityMismatch { expected: 2, got: k });
        }
    }
    Ok(report)
}

/// Value of the word formed by appending one zero digit, the arithmetic
/// meaning of the Fibonacci shift.
pub fn shifted_value(n: u64) -> Result<u64> {
    let mut w = encode(n, System::Fibonacci);
    w.digits.push(0);
    decode(&w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{
        enumerate_values, equivalent, is_zero_closed, permute_tracks, sync_eval,
    };
    use crate::numeration::pad_align;

    fn w(sys: System, s: &str) -> DigitWord {
        DigitWord::from_str(sys, s).unwrap()
    }

    #[test]
    fn base2_adder_small_facts() {
        let add = adder(System::Base2).unwrap();
        let t = pad_align(&[
            w(System::Base2, "10"),
            w(System::Base2, "01"),
            w(System::Base2, "11"),
        ])
        .unwrap();
        assert!(add.accepts(&t).unwrap());
        let t = pad_align(&[
            w(System::Base2, "10"),
            w(System::Base2, "01"),
            w(System::Base2, "10"),
        ])
        .unwrap();
        assert!(!add.accepts(&t).unwrap());
        assert!(is_zero_closed(&add));
    }

    #[test]
    fn fib_adder_small_facts() {
        let add = adder(System::Fibonacci).unwrap();
        let t = pad_align(&[
            w(System::Fibonacci, "010"),
            w(System::Fibonacci, "001"),
            w(System::Fibonacci, "100"),
        ])
        .unwrap();
        assert!(add.accepts(&t).unwrap());
        assert!(!add.accepts_values(&[2, 2, 5]).unwrap());
        assert!(add.accepts_values(&[2, 3, 5]).unwrap());
        assert!(is_zero_closed(&add));
    }

    #[test]
    fn adders_match_integer_addition() {
        for sys in [System::Base2, System::Fibonacci] {
            let add = adder(sys).unwrap();
            let report =
                validate_relation(&add, |t| t[0] + t[1] == t[2], 72).unwrap();
            assert!(report.passed(), "{sys}: {:?}", report.mismatches);
        }
    }

    #[test]
    fn adder_commutes_and_is_functional() {
        for sys in [System::Base2, System::Fibonacci] {
            let add = adder(sys).unwrap();
            let swapped = permute_tracks(&add, &[1, 0, 2]);
            assert!(equivalent(&add, &swapped).unwrap());
            for x in 0..40u64 {
                for y in 0..40u64 {
                    let zs = completions(&add, &[(0, x), (1, y)], 2, 100).unwrap();
                    assert_eq!(zs, vec![x + y]);
                }
            }
        }
    }

    #[test]
    fn corrupted_adder_fails_validation() {
        let mut add = adder(System::Fibonacci).unwrap();
        // reroute one non-dead transition to break the relation
        let sym = 0b110; // columns x=1, y=1, z=0
        let from = add.trans[add.initial][0];
        add.trans[from][sym] = add.initial;
        let report = validate_relation(&add, |t| t[0] + t[1] == t[2], 40).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn comparisons_match_integer_order() {
        for sys in [System::Base2, System::Fibonacci] {
            for rel in [Rel::Eq, Rel::Ne, Rel::Lt, Rel::Le, Rel::Gt, Rel::Ge] {
                let c = comparison(sys, rel).unwrap();
                let report = validate_relation(&c, |t| rel.eval(t[0], t[1]), 120).unwrap();
                assert!(report.passed(), "{sys} {rel:?}: {:?}", report.mismatches);
                assert!(is_zero_closed(&c));
            }
        }
        let lt = comparison(System::Fibonacci, Rel::Lt).unwrap();
        assert!(lt.accepts_values(&[4, 6]).unwrap());
        let eq = comparison(System::Base2, Rel::Eq).unwrap();
        assert!(eq.accepts_values(&[5, 5]).unwrap());
    }

    #[test]
    fn const_multiples_match_integer_product() {
        let m2 = const_multiple(System::Base2, 2).unwrap();
        assert!(m2.accepts_values(&[3, 6]).unwrap());
        let m0 = const_multiple(System::Base2, 0).unwrap();
        assert!(m0.accepts_values(&[7, 0]).unwrap());
        for sys in [System::Base2, System::Fibonacci] {
            for c in [0u64, 1, 2, 3, 5] {
                let m = const_multiple(sys, c).unwrap();
                let report =
                    validate_relation(&m, |t| t[0].checked_mul(c) == Some(t[1]), 100).unwrap();
                assert!(report.passed(), "{sys} c={c}: {:?}", report.mismatches);
            }
        }
        assert!(const_multiple(System::Base2, 65).is_err());
    }

    #[test]
    fn incrementer_examples_and_oracle() {
        let inc = fib_incrementer().unwrap();
        assert!(inc
            .accepts(&pad_align(&[w(System::Fibonacci, "100"), w(System::Fibonacci, "101")]).unwrap())
            .unwrap());
        assert!(inc
            .accepts(&pad_align(&[w(System::Fibonacci, "101"), w(System::Fibonacci, "1000")]).unwrap())
            .unwrap());
        assert!(is_zero_closed(&inc));
        for n in 0..2_000u64 {
            assert_eq!(sync_eval(&inc, 0, n).unwrap(), n + 1, "inc({n})");
        }
        let report = validate_relation(&inc, |t| t[0] + 1 == t[1], 150).unwrap();
        assert!(report.passed(), "{:?}", report.mismatches);
    }

    #[test]
    fn incrementer_equals_adder_specialization() {
        let inc = fib_incrementer().unwrap();
        let via_adder = adder_increment(System::Fibonacci).unwrap();
        assert!(equivalent(&inc, &via_adder).unwrap());
    }

    #[test]
    fn shifter_examples_and_oracle() {
        let sh = fib_shifter().unwrap();
        assert!(sh.accepts_values(&[3, 5]).unwrap());
        assert!(sh.accepts_values(&[0, 0]).unwrap());
        assert!(is_zero_closed(&sh));
        for n in 0..2_000u64 {
            assert_eq!(sync_eval(&sh, 0, n).unwrap(), shifted_value(n).unwrap(), "shift({n})");
        }
        let report = validate_relation(&sh, |t| shifted_value(t[0]).unwrap() == t[1], 150).unwrap();
        assert!(report.passed(), "{:?}", report.mismatches);
    }

    #[test]
    fn projected_adder_is_total() {
        // exists z with x + y = z: accepts every pair
        let add = adder(System::Base2).unwrap();
        let all = project_existential(&add, 2, DEFAULT_BUDGET).unwrap();
        for x in 0..32u64 {
            for y in 0..32u64 {
                assert!(all.accepts_values(&[x, y]).unwrap());
            }
        }
    }

    #[test]
    fn enumerate_even_numbers_from_multiple() {
        // y = 2x projected over x is the even set
        let m2 = const_multiple(System::Base2, 2).unwrap();
        let even = project_existential(&m2, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            enumerate_values(&even, 6, DEFAULT_BUDGET).unwrap(),
            vec![0, 2, 4, 6, 8, 10]
        );
    }
}
