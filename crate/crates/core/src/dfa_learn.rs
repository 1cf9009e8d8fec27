//! Characteristic samples for DFAs and inference of DFAs from samples.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Letter, Word};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::sample::Sample;

/// Characteristic sample of a minimal complete DFA: the labels of
/// `S·E ∪ S·Σ·E`, where `S` holds the lexicographic access words and `E`
/// contains `ε` and one shortest distinguishing word per pair of states.
/// A one-state automaton yields the single pair `⟨ε, b⟩`.
pub fn char_dfa(d: &Dfa) -> Result<Sample> {
    if !d.is_complete() {
        return Err(Error::Precondition { op: "char_dfa", flag: "complete" });
    }
    let access = d.lex_access_words()?;
    if !d.is_minimal() {
        return Err(Error::Precondition { op: "char_dfa", flag: "minimal" });
    }
    let mut sample = Sample::new(d.algebra());
    if d.num_states() == 1 {
        sample.insert(Vec::new(), d.is_accepting(d.initial()))?;
        return Ok(sample);
    }
    let mut by_access: Vec<(Word, usize)> = access.into_iter().enumerate().map(|(q, w)| (w, q)).collect();
    by_access.sort();
    let mut suffixes: BTreeSet<Word> = BTreeSet::from([Vec::new()]);
    for (i, (_, q1)) in by_access.iter().enumerate() {
        for (_, q2) in &by_access[i + 1..] {
            suffixes.insert(d.distinguishing_word(*q1, *q2)?);
        }
    }
    for (u, _) in &by_access {
        for e in &suffixes {
            let w: Word = u.iter().chain(e).copied().collect();
            let label = d.accepts(&w);
            sample.insert(w, label)?;
            for sigma in d.alphabet() {
                let w: Word = u.iter().chain(std::iter::once(sigma)).chain(e).copied().collect();
                let label = d.accepts(&w);
                sample.insert(w, label)?;
            }
        }
    }
    Ok(sample)
}

/// The tree automaton with one state per prefix of a sample word, without
/// a sink. States are ordered by their prefixes.
pub fn prefix_tree_partial(s: &Sample) -> Result<Dfa> {
    prefix_tree_over(s, s.letters())
}

fn prefix_tree_over(s: &Sample, sigma: BTreeSet<Letter>) -> Result<Dfa> {
    let prefixes: Vec<Word> = s.prefixes().into_iter().collect();
    let index: BTreeMap<&Word, usize> = prefixes.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut edges = Vec::new();
    for (i, w) in prefixes.iter().enumerate().skip(1) {
        let parent = index[&w[..w.len() - 1].to_vec()];
        edges.push((parent, *w.last().expect("nonempty prefix"), i));
    }
    let names = prefixes.iter().enumerate().map(|(i, _)| format!("t{i}")).collect();
    let accepting = prefixes.iter().map(|w| s.label(w) == Some(true)).collect();
    Dfa::new(s.algebra(), sigma, names, 0, accepting, edges)
}

/// Prefix-tree automaton completed with a rejecting sink over the sample's
/// letters.
pub fn prefix_tree_dfa(s: &Sample) -> Result<Dfa> {
    Ok(prefix_tree_partial(s)?.completed())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InferOutcome {
    /// States were recovered from pairwise distinguishable prefixes.
    Folded,
    /// The prefix tree was returned instead.
    PrefixTree,
}

/// Infers a DFA agreeing with `s`.
///
/// Starting from `R = {ε}`, every extension `r·c` (letters of the sample,
/// ascending, depth first) that no member of `R` is equivalent to under the
/// sample joins `R`. When every member of `R` is a sample word, the members
/// become the states and `r·c` moves to the least equivalent member.
/// Otherwise, or when the folded automaton contradicts the sample, the
/// prefix-tree automaton is returned.
pub fn infer_dfa(s: &Sample) -> Result<Dfa> {
    Ok(infer_dfa_traced(s)?.0)
}

/// [`infer_dfa`] over a known alphabet: the letters of `s` together with
/// `alphabet`. Needed when the sample does not mention every letter, as for
/// the characteristic sample `{⟨ε, b⟩}` of a one-state automaton.
pub fn infer_dfa_over(s: &Sample, alphabet: impl IntoIterator<Item = Letter>) -> Result<Dfa> {
    let mut sigma = s.letters();
    sigma.extend(alphabet);
    Ok(infer_with(s, sigma)?.0)
}

pub fn infer_dfa_traced(s: &Sample) -> Result<(Dfa, InferOutcome)> {
    infer_with(s, s.letters())
}

fn infer_with(s: &Sample, alphabet: BTreeSet<Letter>) -> Result<(Dfa, InferOutcome)> {
    if s.is_empty() {
        return Err(Error::EmptySample);
    }
    let sigma: Vec<Letter> = alphabet.iter().copied().collect();
    let mut reps: Vec<Word> = vec![Vec::new()];
    grow(s, &sigma, &mut reps, 0);
    let fallback = || Ok((prefix_tree_over(s, alphabet.clone())?.completed(), InferOutcome::PrefixTree));
    if reps.iter().any(|r| !s.contains_word(r)) {
        return fallback();
    }
    reps.sort();
    let mut edges = Vec::new();
    for (i, r) in reps.iter().enumerate() {
        for c in &sigma {
            let mut rs = r.clone();
            rs.push(*c);
            let Some(j) = reps.iter().position(|r2| s.equivalent(&rs, r2)) else {
                return fallback();
            };
            edges.push((i, *c, j));
        }
    }
    let names = (0..reps.len()).map(|i| format!("r{i}")).collect();
    let accepting = reps.iter().map(|r| s.label(r) == Some(true)).collect();
    let dfa = Dfa::new(s.algebra(), sigma.iter().copied(), names, 0, accepting, edges)?;
    if !s.agrees_with(|w| dfa.accepts(w)) {
        return fallback();
    }
    Ok((dfa, InferOutcome::Folded))
}

fn grow(s: &Sample, sigma: &[Letter], reps: &mut Vec<Word>, at: usize) {
    for c in sigma {
        let mut w = reps[at].clone();
        w.push(*c);
        if reps.iter().all(|r| s.distinguishes(&w, r)) {
            reps.push(w);
            let next = reps.len() - 1;
            grow(s, sigma, reps, next);
        }
    }
}
