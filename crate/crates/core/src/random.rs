//! Random automata, predicates and samples for experiments and tests.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Algebra, Ext, Letter, Predicate, Word};
use crate::dfa::Dfa;
use crate::error::Result;
use crate::ops::{minimize, MinForm};
use crate::sample::Sample;
use crate::sfa::{Sfa, Transition};

/// `count` distinct values from `1..=max`, ascending.
pub fn cut_points<R: Rng>(rng: &mut R, count: usize, max: i64) -> Vec<i64> {
    let mut cuts = BTreeSet::new();
    let count = count.min(max.max(0) as usize);
    while cuts.len() < count {
        cuts.insert(rng.gen_range(1..=max));
    }
    cuts.into_iter().collect()
}

/// Consecutive intervals `[0,c1), [c1,c2), .., [ck,inf)`.
pub fn tiling(cuts: &[i64]) -> Vec<Predicate> {
    let mut bounds = vec![Ext::Fin(0)];
    bounds.extend(cuts.iter().map(|&c| Ext::Fin(c)));
    bounds.push(Ext::PosInf);
    bounds.windows(2).map(|w| Predicate::Interval(w[0], w[1])).collect()
}

/// A deterministic complete neat SFA over `interval-nat` with up to
/// `max_states` states and `max_degree` transitions per state.
pub fn random_complete_sfa<R: Rng>(rng: &mut R, max_states: usize, max_degree: usize, max_endpoint: i64) -> Sfa {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut transitions = Vec::new();
    for q in 0..n {
        let degree = rng.gen_range(1..=max_degree.max(1));
        for pred in tiling(&cut_points(rng, degree - 1, max_endpoint)) {
            transitions.push(Transition { src: q, pred, dst: rng.gen_range(0..n) });
        }
    }
    let accepting: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let names = (0..n).map(|i| format!("q{i}")).collect();
    Sfa::new(Algebra::IntervalNat, names, 0, accepting, transitions).expect("well-formed")
}

/// A minimal deterministic complete feasible SFA obtained by minimizing a
/// random complete one.
pub fn random_minimal_sfa<R: Rng>(rng: &mut R, max_states: usize, max_degree: usize, max_endpoint: i64) -> Sfa {
    let m = random_complete_sfa(rng, max_states, max_degree, max_endpoint);
    minimize(&m, MinForm::Neat).expect("complete deterministic input")
}

/// An SFA over `interval-nat`, possibly nondeterministic and incomplete, whose
/// interval endpoints are drawn from `grid`. Predicates may be arbitrary
/// Boolean combinations.
pub fn random_sfa<R: Rng>(rng: &mut R, max_states: usize, max_degree: usize, grid: &[i64]) -> Sfa {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut transitions = Vec::new();
    for q in 0..n {
        for _ in 0..rng.gen_range(0..=max_degree) {
            let pred = random_predicate(rng, 2, grid);
            transitions.push(Transition { src: q, pred, dst: rng.gen_range(0..n) });
        }
    }
    let accepting: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let names = (0..n).map(|i| format!("q{i}")).collect();
    Sfa::new(Algebra::IntervalNat, names, 0, accepting, transitions).expect("well-formed")
}

fn grid_ext<R: Rng>(rng: &mut R, grid: &[i64]) -> Ext {
    if rng.gen_ratio(1, 6) {
        Ext::PosInf
    } else {
        Ext::Fin(*grid.choose(rng).expect("nonempty grid"))
    }
}

/// A random interval predicate of nesting depth at most `depth`.
pub fn random_predicate<R: Rng>(rng: &mut R, depth: usize, grid: &[i64]) -> Predicate {
    if depth == 0 || rng.gen_ratio(2, 5) {
        return match rng.gen_range(0..12) {
            0 => Predicate::True,
            1 => Predicate::False,
            _ => Predicate::Interval(grid_ext(rng, grid), grid_ext(rng, grid)),
        };
    }
    match rng.gen_range(0..3) {
        0 => Predicate::and(random_predicate(rng, depth - 1, grid), random_predicate(rng, depth - 1, grid)),
        1 => Predicate::or(random_predicate(rng, depth - 1, grid), random_predicate(rng, depth - 1, grid)),
        _ => Predicate::not(random_predicate(rng, depth - 1, grid)),
    }
}

/// A covering partition of `interval-nat` into at most `max_blocks` blocks;
/// each block is a disjunction of consecutive-tile intervals.
pub fn random_partition<R: Rng>(rng: &mut R, max_blocks: usize, max_endpoint: i64) -> Vec<Predicate> {
    let blocks = rng.gen_range(1..=max_blocks.max(1));
    let cuts = rng.gen_range(0..=2 * blocks);
    let tiles = tiling(&cut_points(rng, cuts, max_endpoint));
    let mut parts: Vec<Vec<Predicate>> = vec![Vec::new(); blocks];
    for t in tiles {
        parts[rng.gen_range(0..blocks)].push(t);
    }
    parts.into_iter().map(Predicate::or_all).collect()
}

/// A minimal complete DFA over the letters `0..alphabet`.
pub fn random_dfa<R: Rng>(rng: &mut R, max_states: usize, alphabet: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states.max(1));
    let letters: Vec<Letter> = (0..alphabet as i64).map(Letter::num).collect();
    let mut edges = Vec::new();
    for q in 0..n {
        for &d in &letters {
            edges.push((q, d, rng.gen_range(0..n)));
        }
    }
    let accepting = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let names = (0..n).map(|i| format!("q{i}")).collect();
    Dfa::new(Algebra::IntervalNat, letters, names, 0, accepting, edges).expect("well-formed").minimized()
}

/// A random word of length at most `max_len` over `letters`.
pub fn random_word<R: Rng>(rng: &mut R, letters: &[Letter], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| *letters.choose(rng).expect("nonempty alphabet")).collect()
}

/// Up to `count` extra words labeled by `label`.
pub fn noise<R: Rng>(
    rng: &mut R,
    algebra: Algebra,
    count: usize,
    max_len: usize,
    mut letter: impl FnMut(&mut R) -> Letter,
    label: impl Fn(&[Letter]) -> bool,
) -> Result<Sample> {
    let mut s = Sample::new(algebra);
    for _ in 0..count {
        let len = rng.gen_range(0..=max_len);
        let w: Word = (0..len).map(|_| letter(rng)).collect();
        let b = label(&w);
        s.insert(w, b)?;
    }
    Ok(s)
}
