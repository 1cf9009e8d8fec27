//! Shared fixtures and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use symlearn::algebra::{Ext, Letter, Predicate, Word};
use symlearn::sample::Sample;
use symlearn::sfa::Sfa;

pub const BANDS: &str = "\
algebra interval-nat
states q0 q1
initial q0
accepting q1
trans q0 q1 [0,100)
trans q0 q0 [100,inf)
trans q1 q1 [0,200)
trans q1 q0 [200,inf)
";

pub const SPLIT: &str = "\
algebra interval-nat
states qi q1 q2 q3
initial qi
accepting q1 q2
trans qi q1 [0,100)
trans qi q2 [100,inf)
trans q1 q1 [0,100)
trans q1 q3 [100,inf)
trans q2 q2 [100,inf)
trans q2 q3 [0,100)
trans q3 q3 [0,inf)
";

pub fn bands() -> Sfa {
    Sfa::parse(BANDS).unwrap()
}

pub fn split() -> Sfa {
    Sfa::parse(SPLIT).unwrap()
}

pub fn l(x: i64) -> Letter {
    Letter::num(x)
}

pub fn w(xs: &[i64]) -> Word {
    xs.iter().map(|&x| l(x)).collect()
}

pub fn sample(pairs: &[(&[i64], bool)]) -> Sample {
    Sample::from_pairs(symlearn::algebra::Algebra::IntervalNat, pairs.iter().map(|(x, b)| (w(x), *b))).unwrap()
}

/// Direct recursive semantics of an interval predicate at `x`.
pub fn holds(p: &Predicate, x: Ext) -> bool {
    match p {
        Predicate::True => true,
        Predicate::False => false,
        Predicate::Interval(a, b) => {
            *a <= x && (x < *b || (*b == Ext::PosInf && x == Ext::PosInf && *a < Ext::PosInf))
        }
        Predicate::Lit(_) => panic!("interval predicates only"),
        Predicate::And(p, q) => holds(p, x) && holds(q, x),
        Predicate::Or(p, q) => holds(p, x) || holds(q, x),
        Predicate::Not(p) => !holds(p, x),
    }
}

/// One frontier step of `m`, evaluated through [`holds`].
pub fn oracle_step(m: &Sfa, set: &BTreeSet<usize>, d: Ext) -> BTreeSet<usize> {
    m.transitions().iter().filter(|t| set.contains(&t.src) && holds(&t.pred, d)).map(|t| t.dst).collect()
}

pub fn oracle_accepts(m: &Sfa, word: &[Letter]) -> bool {
    let mut set = BTreeSet::from([m.initial()]);
    for d in word {
        set = oracle_step(m, &set, d.as_ext().unwrap());
    }
    set.iter().any(|&q| m.is_accepting(q))
}

/// A representative of every letter class of predicates with endpoints in
/// `grid`: `0`, `inf`, each grid point and its predecessor.
pub fn boundary_letters(grid: &[i64]) -> Vec<Ext> {
    let mut out = BTreeSet::from([Ext::Fin(0), Ext::PosInf]);
    for &g in grid {
        out.insert(Ext::Fin(g));
        if g > 0 {
            out.insert(Ext::Fin(g - 1));
        }
    }
    out.into_iter().collect()
}

/// Visits every word of length at most `max_len` over `letters` depth first,
/// carrying one state per tracked automaton. `visit` receives the word and
/// the states and returns `false` to abort the walk.
pub fn walk_words<S: Clone>(
    letters: &[Ext],
    max_len: usize,
    init: S,
    step: &dyn Fn(&S, Ext) -> S,
    visit: &mut dyn FnMut(&[Ext], &S) -> bool,
) -> bool {
    fn go<S: Clone>(
        letters: &[Ext],
        left: usize,
        word: &mut Vec<Ext>,
        st: &S,
        step: &dyn Fn(&S, Ext) -> S,
        visit: &mut dyn FnMut(&[Ext], &S) -> bool,
    ) -> bool {
        if !visit(word, st) {
            return false;
        }
        if left == 0 {
            return true;
        }
        for &d in letters {
            let next = step(st, d);
            word.push(d);
            let ok = go(letters, left - 1, word, &next, step, visit);
            word.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    go(letters, max_len, &mut Vec::new(), &init, step, visit)
}
