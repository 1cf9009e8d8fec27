//! Deterministic automata over a finite, ordered set of letters.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::algebra::{valuation_minterm, Algebra, Ext, Letter, Predicate, Word};
use crate::error::{Error, Result};
use crate::ops::moore_classes;
use crate::sfa::{Sfa, Transition};

/// A DFA whose alphabet is a sorted list of domain letters. Transitions may
/// be missing; a missing transition rejects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    algebra: Algebra,
    alphabet: Vec<Letter>,
    names: Vec<String>,
    initial: usize,
    accepting: Vec<bool>,
    delta: Vec<Vec<Option<usize>>>,
}

impl Dfa {
    /// Builds a DFA from `(src, letter, dst)` edges.
    pub fn new(
        algebra: Algebra,
        alphabet: impl IntoIterator<Item = Letter>,
        names: Vec<String>,
        initial: usize,
        accepting: Vec<bool>,
        edges: impl IntoIterator<Item = (usize, Letter, usize)>,
    ) -> Result<Dfa> {
        let alphabet: Vec<Letter> = alphabet.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        for d in &alphabet {
            algebra.check_letter(d)?;
        }
        let n = names.len();
        if n == 0 || initial >= n || accepting.len() != n {
            return Err(Error::InvalidAutomaton("inconsistent DFA shape".into()));
        }
        let mut delta = vec![vec![None; alphabet.len()]; n];
        for (src, d, dst) in edges {
            let k = alphabet
                .binary_search(&d)
                .map_err(|_| Error::InvalidAutomaton(format!("letter {d} outside the alphabet")))?;
            if src >= n || dst >= n {
                return Err(Error::InvalidAutomaton("edge endpoint out of range".into()));
            }
            match delta[src][k] {
                Some(old) if old != dst => {
                    return Err(Error::InvalidAutomaton(format!("two moves from `{}` on {d}", names[src])))
                }
                _ => delta[src][k] = Some(dst),
            }
        }
        Ok(Dfa { algebra, alphabet, names, initial, accepting, delta })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn letter_index(&self, d: &Letter) -> Option<usize> {
        self.alphabet.binary_search(d).ok()
    }

    pub fn next(&self, q: usize, d: &Letter) -> Option<usize> {
        self.delta[q][self.letter_index(d)?]
    }

    pub fn next_at(&self, q: usize, k: usize) -> Option<usize> {
        self.delta[q][k]
    }

    pub fn run_from(&self, q: usize, w: &[Letter]) -> Option<usize> {
        w.iter().try_fold(q, |q, d| self.next(q, d))
    }

    pub fn run(&self, w: &[Letter]) -> Option<usize> {
        self.run_from(self.initial, w)
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.run(w).is_some_and(|q| self.accepting[q])
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Outgoing `(letter, dst)` pairs of `q` in letter order.
    pub fn edges(&self, q: usize) -> impl Iterator<Item = (Letter, usize)> + '_ {
        self.delta[q].iter().enumerate().filter_map(|(k, d)| d.map(|d| (self.alphabet[k], d)))
    }

    /// Adds a rejecting sink for every missing move.
    pub fn completed(&self) -> Dfa {
        if self.is_complete() {
            return self.clone();
        }
        let sink = self.num_states();
        let mut d = self.clone();
        d.names.push(crate::sfa::fresh_name(&self.names, "sink"));
        d.accepting.push(false);
        d.delta.push(vec![Some(sink); self.alphabet.len()]);
        for row in d.delta.iter_mut() {
            for cell in row.iter_mut() {
                cell.get_or_insert(sink);
            }
        }
        d
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for p in self.delta[q].iter().flatten() {
                if !seen[*p] {
                    seen[*p] = true;
                    queue.push_back(*p);
                }
            }
        }
        seen
    }

    /// Whether a complete, fully reachable DFA has no equivalent states.
    pub fn is_minimal(&self) -> bool {
        if !self.is_complete() || self.reachable().iter().any(|r| !r) {
            return false;
        }
        let delta: Vec<Vec<usize>> =
            self.delta.iter().map(|row| row.iter().map(|d| d.expect("complete")).collect()).collect();
        let classes = moore_classes(&self.accepting, &delta);
        classes.iter().collect::<BTreeSet<_>>().len() == self.num_states()
    }

    /// Minimal complete DFA, states named `s0, s1, ..` in breadth-first
    /// order with letters taken ascending.
    pub fn minimized(&self) -> Dfa {
        let d = self.completed();
        let delta: Vec<Vec<usize>> =
            d.delta.iter().map(|row| row.iter().map(|x| x.expect("complete")).collect()).collect();
        let class = moore_classes(&d.accepting, &delta);
        let mut order: HashMap<usize, usize> = HashMap::new();
        let mut reps = Vec::new();
        let mut queue = VecDeque::from([d.initial]);
        order.insert(class[d.initial], 0);
        reps.push(d.initial);
        while let Some(q) = queue.pop_front() {
            for &p in &delta[q] {
                if let std::collections::hash_map::Entry::Vacant(e) = order.entry(class[p]) {
                    e.insert(reps.len());
                    reps.push(p);
                    queue.push_back(p);
                }
            }
        }
        let n = reps.len();
        let delta = reps.iter().map(|&q| delta[q].iter().map(|&p| Some(order[&class[p]])).collect()).collect();
        Dfa {
            algebra: d.algebra,
            alphabet: d.alphabet.clone(),
            names: (0..n).map(|i| format!("s{i}")).collect(),
            initial: 0,
            accepting: reps.iter().map(|&q| d.accepting[q]).collect(),
            delta,
        }
    }

    /// Whether a state bijection maps one DFA onto the other.
    pub fn isomorphic(&self, other: &Dfa) -> bool {
        if self.alphabet != other.alphabet || self.num_states() != other.num_states() {
            return false;
        }
        let mut map = vec![usize::MAX; self.num_states()];
        let mut used = vec![false; other.num_states()];
        map[self.initial] = other.initial;
        used[other.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            let p = map[q];
            if self.accepting[q] != other.accepting[p] {
                return false;
            }
            for k in 0..self.alphabet.len() {
                match (self.delta[q][k], other.delta[p][k]) {
                    (None, None) => {}
                    (Some(a), Some(b)) => {
                        if map[a] == usize::MAX {
                            if used[b] {
                                return false;
                            }
                            map[a] = b;
                            used[b] = true;
                            queue.push_back(a);
                        } else if map[a] != b {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
        map.iter().all(|&m| m != usize::MAX)
    }

    /// Language equality over the union of both alphabets; letters outside
    /// an automaton's alphabet reject.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        let letters: BTreeSet<Letter> = self.alphabet.iter().chain(&other.alphabet).copied().collect();
        let start = (Some(self.initial), Some(other.initial));
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        let acc = |d: &Dfa, q: Option<usize>| q.is_some_and(|q| d.accepting[q]);
        while let Some((a, b)) = queue.pop_front() {
            if acc(self, a) != acc(other, b) {
                return false;
            }
            for d in &letters {
                let next = (a.and_then(|q| self.next(q, d)), b.and_then(|q| other.next(q, d)));
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        true
    }

    /// The same automaton as an SFA with one singleton predicate per edge.
    pub fn to_sfa(&self) -> Result<Sfa> {
        let mut transitions = Vec::new();
        for q in 0..self.num_states() {
            for (d, p) in self.edges(q) {
                let pred = match d {
                    Letter::Num(Ext::Fin(v)) => Predicate::interval(v, v.saturating_add(1)),
                    Letter::Val(v) => valuation_minterm(v),
                    Letter::Num(_) => {
                        return Err(Error::InvalidLetter(format!("{d} has no singleton interval")));
                    }
                };
                transitions.push(Transition { src: q, pred, dst: p });
            }
        }
        let acc: Vec<usize> = (0..self.num_states()).filter(|&q| self.accepting[q]).collect();
        Sfa::new(self.algebra, self.names.clone(), self.initial, acc, transitions)
    }

    /// Lexicographically least access word of every state, found by a
    /// depth-first traversal that tries letters in ascending order.
    pub fn lex_access_words(&self) -> Result<Vec<Word>> {
        let mut access: Vec<Option<Word>> = vec![None; self.num_states()];
        access[self.initial] = Some(Vec::new());
        let mut stack = vec![(self.initial, 0usize)];
        let mut path: Word = Vec::new();
        while let Some(&mut (q, ref mut k)) = stack.last_mut() {
            if *k == self.alphabet.len() {
                stack.pop();
                path.pop();
                continue;
            }
            let letter = *k;
            *k += 1;
            if let Some(p) = self.delta[q][letter] {
                if access[p].is_none() {
                    path.push(self.alphabet[letter]);
                    access[p] = Some(path.clone());
                    stack.push((p, 0));
                }
            }
        }
        access
            .into_iter()
            .enumerate()
            .map(|(q, w)| w.ok_or_else(|| Error::UnreachableState(self.names[q].clone())))
            .collect()
    }

    /// Shortest, then lexicographically least, word accepted from exactly
    /// one of `q1`, `q2`.
    pub fn distinguishing_word(&self, q1: usize, q2: usize) -> Result<Word> {
        let acc = |q: Option<usize>| q.is_some_and(|q| self.accepting[q]);
        let start = (Some(q1), Some(q2));
        type Pair = (Option<usize>, Option<usize>);
        let mut parent: HashMap<Pair, Option<(Pair, Letter)>> = HashMap::from([(start, None)]);
        let mut queue = VecDeque::from([start]);
        while let Some(pair) = queue.pop_front() {
            if acc(pair.0) != acc(pair.1) {
                let mut word = Vec::new();
                let mut cur = pair;
                while let Some(Some((prev, d))) = parent.get(&cur) {
                    word.push(*d);
                    cur = *prev;
                }
                word.reverse();
                return Ok(word);
            }
            for (k, d) in self.alphabet.iter().enumerate() {
                let next = (pair.0.and_then(|q| self.delta[q][k]), pair.1.and_then(|q| self.delta[q][k]));
                if next == (None, None) || parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next, Some((pair, *d)));
                queue.push_back(next);
            }
        }
        Err(Error::Indistinguishable(self.names[q1].clone(), self.names[q2].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_letter() -> Dfa {
        let l = Letter::num;
        Dfa::new(
            Algebra::IntervalNat,
            [l(0), l(100), l(200)],
            vec!["q0".into(), "q1".into()],
            0,
            vec![false, true],
            [(0, l(0), 1), (0, l(100), 0), (0, l(200), 0), (1, l(0), 1), (1, l(100), 1), (1, l(200), 0)],
        )
        .unwrap()
    }

    #[test]
    fn access_words_follow_smallest_letters() {
        let d = three_letter();
        assert_eq!(d.lex_access_words().unwrap(), vec![vec![], vec![Letter::num(0)]]);
        let x = Letter::num(1);
        let y = Letter::num(2);
        let chain = Dfa::new(
            Algebra::IntervalNat,
            [x, y],
            vec!["a".into(), "b".into(), "c".into()],
            0,
            vec![false, false, true],
            [(0, x, 1), (1, x, 2)],
        )
        .unwrap();
        assert_eq!(chain.lex_access_words().unwrap(), vec![vec![], vec![x], vec![x, x]]);
        let unreachable = Dfa::new(Algebra::IntervalNat, [x], vec!["a".into(), "b".into()], 0, vec![false, false], []).unwrap();
        assert!(matches!(unreachable.lex_access_words(), Err(Error::UnreachableState(_))));
    }

    #[test]
    fn distinguishing_words() {
        let d = three_letter();
        assert_eq!(d.distinguishing_word(0, 1).unwrap(), Vec::<Letter>::new());
        let a = Letter::num(3);
        let late = Dfa::new(
            Algebra::IntervalNat,
            [a],
            vec!["p".into(), "q".into(), "yes".into(), "no".into()],
            0,
            vec![false, false, true, false],
            [(0, a, 2), (1, a, 3), (2, a, 2), (3, a, 3)],
        )
        .unwrap();
        assert_eq!(late.distinguishing_word(0, 1).unwrap(), vec![a]);
        assert!(late.distinguishing_word(2, 2).is_err());
    }

    #[test]
    fn minimal_and_isomorphic() {
        let d = three_letter();
        assert!(d.is_minimal());
        let m = d.minimized();
        assert!(m.isomorphic(&d));
        assert!(m.equivalent(&d));
        assert!(d.to_sfa().unwrap().accepts(&[Letter::num(0)]));
    }
}
