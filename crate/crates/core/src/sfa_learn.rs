//! Passive learning of SFAs over interval algebras.
//!
//! An SFA is concretized to a DFA over finitely many representative
//! letters, learned with the DFA procedures, and generalized back to
//! interval predicates.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Algebra, Denotation, Ext, Letter, Predicate, Word};
use crate::dfa::Dfa;
use crate::dfa_learn::{char_dfa, infer_dfa, prefix_tree_partial};
use crate::error::{Error, Result};
use crate::sample::Sample;
use crate::sfa::{Sfa, Transition};

/// Pairwise disjoint, possibly empty, finite letter sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcretePartition {
    blocks: Vec<BTreeSet<Letter>>,
}

impl ConcretePartition {
    pub fn new(blocks: Vec<BTreeSet<Letter>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for b in &blocks {
            for d in b {
                if !seen.insert(*d) {
                    return Err(Error::InvalidPartition(format!("letter {d} occurs in two blocks")));
                }
            }
        }
        Ok(ConcretePartition { blocks })
    }

    pub fn blocks(&self) -> &[BTreeSet<Letter>] {
        &self.blocks
    }
}

/// Pairwise disjoint predicates covering the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicatePartition {
    blocks: Vec<Predicate>,
}

impl PredicatePartition {
    pub fn new(alg: Algebra, blocks: Vec<Predicate>) -> Result<Self> {
        let dens: Vec<Denotation> = blocks
            .iter()
            .map(|p| alg.check_pred(p).map(|_| alg.denote(p)))
            .collect::<Result<_>>()?;
        let mut union = alg.complement(&alg.top());
        for (i, d) in dens.iter().enumerate() {
            if !union.and(d).is_empty() {
                return Err(Error::InvalidPartition(format!("block {} overlaps an earlier block", i + 1)));
            }
            union = union.or(d);
        }
        if union != alg.top() {
            return Err(Error::InvalidPartition("blocks do not cover the domain".into()));
        }
        Ok(PredicatePartition { blocks })
    }

    pub fn blocks(&self) -> &[Predicate] {
        &self.blocks
    }
}

/// One letter per maximal interval of each block: its least element.
/// A block that is a single interval yields a singleton, an empty block
/// the empty set.
pub fn concretize_alg(alg: Algebra, pp: &PredicatePartition) -> Result<ConcretePartition> {
    alg.require_monotonic("concretize")?;
    let blocks = pp
        .blocks
        .iter()
        .map(|p| {
            let list = alg.canonical_intervals(p)?;
            Ok(list.spans().iter().map(|s| Letter::Num(s.lo)).collect())
        })
        .collect::<Result<Vec<BTreeSet<Letter>>>>()?;
    ConcretePartition::new(blocks)
}

/// Sweeps the letters in ascending order: every maximal run of letters from
/// a single block contributes the interval from the run's first letter to
/// the first letter of the next run, and the last run extends to `inf`.
/// The first run starts at the least domain letter so that the blocks cover
/// the whole domain.
pub fn generalize_alg(alg: Algebra, cp: &ConcretePartition) -> Result<PredicatePartition> {
    alg.require_monotonic("generalize")?;
    let mut owner: BTreeMap<Ext, usize> = BTreeMap::new();
    for (i, b) in cp.blocks.iter().enumerate() {
        for d in b {
            alg.check_letter(d)?;
            let e = d.as_ext().expect("interval letter");
            if owner.insert(e, i).is_some() {
                return Err(Error::InvalidPartition(format!("letter {d} occurs in two blocks")));
            }
        }
    }
    if owner.is_empty() {
        return Err(Error::InvalidPartition("all blocks are empty".into()));
    }
    let mut runs: Vec<(Ext, usize)> = Vec::new();
    for (&e, &i) in &owner {
        if runs.last().map(|r| r.1) != Some(i) {
            runs.push((e, i));
        }
    }
    if runs.len() > 1 && runs.last().expect("nonempty").0 == Ext::PosInf {
        return Err(Error::InvalidPartition("the letter inf cannot be separated from smaller letters".into()));
    }
    runs[0].0 = alg.dmin_ext();
    let mut pieces: Vec<Vec<Predicate>> = vec![Vec::new(); cp.blocks.len()];
    for (j, &(lo, i)) in runs.iter().enumerate() {
        let hi = runs.get(j + 1).map_or(Ext::PosInf, |r| r.0);
        pieces[i].push(Predicate::Interval(lo, hi));
    }
    let blocks = pieces.into_iter().map(Predicate::or_all).collect();
    PredicatePartition::new(alg, blocks)
}

fn require_learnable(m: &Sfa, op: &'static str) -> Result<()> {
    m.algebra().require_monotonic(op)?;
    let c = m.classify();
    for (ok, flag) in [(c.deterministic, "deterministic"), (c.complete, "complete"), (c.feasible, "feasible")] {
        if !ok {
            return Err(Error::Precondition { op, flag });
        }
    }
    Ok(())
}

/// Concrete DFA of a deterministic complete SFA.
///
/// The outgoing predicates of each state are grouped by destination into a
/// predicate partition and concretized; the letters found over all states
/// form the alphabet, and every state moves on every letter as the SFA does.
pub fn concretize_sfa(m: &Sfa) -> Result<Dfa> {
    require_learnable(m, "concretize_sfa")?;
    let alg = m.algebra();
    let mut letters: BTreeSet<Letter> = BTreeSet::new();
    for ts in m.out_lists() {
        let mut by_dst: BTreeMap<usize, Vec<Predicate>> = BTreeMap::new();
        for t in ts {
            by_dst.entry(t.dst).or_default().push(t.pred.clone());
        }
        let blocks = by_dst.into_values().map(Predicate::or_all).collect();
        let pp = PredicatePartition::new(alg, blocks)?;
        for b in concretize_alg(alg, &pp)?.blocks {
            letters.extend(b);
        }
    }
    let mut edges = Vec::new();
    for q in 0..m.num_states() {
        let from = BTreeSet::from([q]);
        for d in &letters {
            let to = m.step(&from, d);
            let dst = *to.iter().next().expect("complete automaton");
            edges.push((q, *d, dst));
        }
    }
    let accepting = (0..m.num_states()).map(|q| m.is_accepting(q)).collect();
    Dfa::new(alg, letters, m.names().to_vec(), m.initial(), accepting, edges)
}

/// SFA of a DFA over an interval algebra: the letters leaving each state are
/// grouped by destination (destinations ascending) and generalized. A state
/// without outgoing letters loops on every letter.
pub fn generalize_dfa(d: &Dfa) -> Result<Sfa> {
    let alg = d.algebra();
    alg.require_monotonic("generalize_dfa")?;
    let mut transitions = Vec::new();
    for q in 0..d.num_states() {
        let mut by_dst: BTreeMap<usize, BTreeSet<Letter>> = BTreeMap::new();
        for (c, p) in d.edges(q) {
            by_dst.entry(p).or_default().insert(c);
        }
        if by_dst.is_empty() {
            transitions.push(Transition { src: q, pred: alg.top_atom(), dst: q });
            continue;
        }
        let dsts: Vec<usize> = by_dst.keys().copied().collect();
        let cp = ConcretePartition::new(by_dst.into_values().collect())?;
        let pp = generalize_alg(alg, &cp)?;
        for (dst, pred) in dsts.into_iter().zip(pp.blocks) {
            transitions.push(Transition { src: q, pred, dst });
        }
    }
    let acc: Vec<usize> = (0..d.num_states()).filter(|&q| d.is_accepting(q)).collect();
    Sfa::new(alg, d.names().to_vec(), d.initial(), acc, transitions)
}

/// Removes words using letters that do not separate behaviours.
///
/// A set `A` of pairwise distinguishable access words is explored depth
/// first from `ε`. At each `u ∈ A` the sample's letters are scanned in
/// ascending order against a current representative `r`, starting at the
/// least domain letter; a letter `c` with `u·c` distinguishable from `u·r`
/// is kept and becomes the new representative. Then, for each kept letter
/// `c` in ascending order, `u·c` joins `A` when it is distinguishable from
/// every member of `A`. This repeats until nothing changes, and the sample
/// is restricted to words over the kept letters.
pub fn decontaminate(s: &Sample) -> Result<Sample> {
    let alg = s.algebra();
    alg.require_monotonic("decontaminate")?;
    let letters: Vec<Letter> = s.letters().into_iter().collect();
    let mut kept: BTreeSet<Letter> = BTreeSet::from([alg.domain_min()]);
    let mut access: Vec<Word> = vec![Vec::new()];
    loop {
        let before = (kept.len(), access.len());
        let mut visited = BTreeSet::new();
        explore(s, &letters, &mut kept, &mut access, &mut visited, Vec::new());
        if (kept.len(), access.len()) == before {
            break;
        }
    }
    Ok(s.restrict(&kept))
}

fn explore(
    s: &Sample,
    letters: &[Letter],
    kept: &mut BTreeSet<Letter>,
    access: &mut Vec<Word>,
    visited: &mut BTreeSet<Word>,
    u: Word,
) {
    if !visited.insert(u.clone()) {
        return;
    }
    let mut rep = u.clone();
    rep.push(s.algebra().domain_min());
    for &c in letters {
        let mut uc = u.clone();
        uc.push(c);
        if uc != rep && s.distinguishes(&uc, &rep) {
            kept.insert(c);
            rep = uc;
        }
    }
    let snapshot: Vec<Letter> = kept.iter().copied().collect();
    for c in snapshot {
        let mut uc = u.clone();
        uc.push(c);
        if access.contains(&uc) {
            explore(s, letters, kept, access, visited, uc);
        } else if access.iter().all(|v| s.distinguishes(&uc, v)) {
            access.push(uc.clone());
            explore(s, letters, kept, access, visited, uc);
        }
    }
}

/// Characteristic sample of a minimal deterministic complete SFA.
pub fn char_sfa(m: &Sfa) -> Result<Sample> {
    char_dfa(&concretize_sfa(m)?)
}

/// Generalized prefix-tree automaton of a sample.
pub fn symbolic_prefix_tree(s: &Sample) -> Result<Sfa> {
    generalize_dfa(&prefix_tree_partial(s)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfaOutcome {
    /// The hypothesis built from the decontaminated sample agreed with the sample.
    Generalized,
    /// The symbolic prefix tree was returned instead.
    PrefixTree,
}

pub fn infer_sfa(s: &Sample) -> Result<Sfa> {
    Ok(infer_sfa_traced(s)?.0)
}

/// Learns from the decontaminated sample and keeps the result if it agrees
/// with the full sample; otherwise falls back to the symbolic prefix tree.
pub fn infer_sfa_traced(s: &Sample) -> Result<(Sfa, SfaOutcome)> {
    if s.is_empty() {
        return Err(Error::EmptySample);
    }
    s.algebra().require_monotonic("infer_sfa")?;
    let clean = decontaminate(s)?;
    if !clean.is_empty() {
        let hyp = generalize_dfa(&infer_dfa(&clean)?)?;
        if s.agrees_with(|w| hyp.accepts(w)) {
            return Ok((hyp, SfaOutcome::Generalized));
        }
    }
    Ok((symbolic_prefix_tree(s)?, SfaOutcome::PrefixTree))
}
