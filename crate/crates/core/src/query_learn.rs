//! Membership and equivalence query harness.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{show_word, valuation_minterm, Algebra, Letter, Predicate, Valuation, Word};
use crate::error::{Error, Result};
use crate::ops::{determinize, equivalent, minterms, product, ProductMode, Verdict};
use crate::sfa::{Sfa, Transition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqAnswer {
    Yes,
    /// A word with its correct label.
    Counterexample(Word, bool),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryCounts {
    pub mq: usize,
    pub eq: usize,
}

impl QueryCounts {
    pub fn total(&self) -> usize {
        self.mq + self.eq
    }
}

/// A teacher answering membership and equivalence queries about one language.
pub trait Oracle {
    fn mq(&mut self, w: &[Letter]) -> Result<bool>;
    fn eq(&mut self, hypothesis: &Sfa) -> Result<EqAnswer>;
    fn counts(&self) -> QueryCounts;
}

/// The three-state SFA accepting exactly the one-letter words satisfying `phi`.
pub fn basic_sfa(alg: Algebra, phi: &Predicate) -> Result<Sfa> {
    Sfa::new(
        alg,
        vec!["b0".into(), "b1".into(), "b2".into()],
        0,
        [1],
        [
            Transition { src: 0, pred: phi.clone(), dst: 1 },
            Transition { src: 0, pred: Predicate::not(phi.clone()), dst: 2 },
            Transition { src: 1, pred: Predicate::True, dst: 2 },
            Transition { src: 2, pred: Predicate::True, dst: 2 },
        ],
    )
}

fn long_words(alg: Algebra) -> Sfa {
    let t = |src, dst| Transition { src, pred: Predicate::True, dst };
    Sfa::new(alg, vec!["l0".into(), "l1".into(), "l2".into()], 0, [2], [t(0, 1), t(1, 2), t(2, 2)])
        .expect("well-formed")
}

/// The predicate `psi` when `h` accepts exactly the one-letter words of
/// `psi`, `None` otherwise.
pub fn basic_predicate_of(h: &Sfa) -> Result<Option<Predicate>> {
    if h.accepts(&[]) {
        return Ok(None);
    }
    let longer = product(h, &long_words(h.algebra()), ProductMode::Intersect)?;
    if !crate::ops::is_empty(&longer) {
        return Ok(None);
    }
    let preds = h.outgoing(h.initial()).filter(|t| h.is_accepting(t.dst)).map(|t| t.pred.clone());
    Ok(Some(Predicate::or_all(preds)))
}

/// Honest teacher for a target SFA.
pub struct SfaTeacher {
    target: Sfa,
    counts: QueryCounts,
}

impl SfaTeacher {
    pub fn new(target: Sfa) -> Result<Self> {
        let c = target.classify();
        if !c.deterministic {
            return Err(Error::Precondition { op: "sfa_teacher", flag: "deterministic" });
        }
        if !c.complete {
            return Err(Error::Precondition { op: "sfa_teacher", flag: "complete" });
        }
        Ok(SfaTeacher { target, counts: QueryCounts::default() })
    }
}

impl Oracle for SfaTeacher {
    fn mq(&mut self, w: &[Letter]) -> Result<bool> {
        self.counts.mq += 1;
        Ok(self.target.accepts(w))
    }

    fn eq(&mut self, hypothesis: &Sfa) -> Result<EqAnswer> {
        self.counts.eq += 1;
        let h = if hypothesis.classify().deterministic { hypothesis.clone() } else { determinize(hypothesis)? };
        Ok(match equivalent(&h, &self.target)? {
            Verdict::Holds => EqAnswer::Yes,
            Verdict::Fails(w) => {
                let b = self.target.accepts(&w);
                EqAnswer::Counterexample(w, b)
            }
        })
    }

    fn counts(&self) -> QueryCounts {
        self.counts
    }
}

/// Teacher for one-letter propositional languages that keeps every
/// valuation unclassified for as long as possible.
pub struct AdversarialPropTeacher {
    alg: Algebra,
    s_plus: BTreeSet<Valuation>,
    s_minus: BTreeSet<Valuation>,
    pool: BTreeSet<Valuation>,
    counts: QueryCounts,
}

impl AdversarialPropTeacher {
    pub fn new(k: u8) -> Result<Self> {
        if !(1..=10).contains(&k) {
            return Err(Error::InvalidAlgebra(format!("adversary needs 1 <= k <= 10, got {k}")));
        }
        let alg = Algebra::prop(k)?;
        let pool = (0..(1u32 << k)).map(|b| Valuation::new(k, b)).collect();
        Ok(AdversarialPropTeacher {
            alg,
            s_plus: BTreeSet::new(),
            s_minus: BTreeSet::new(),
            pool,
            counts: QueryCounts::default(),
        })
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn s_plus(&self) -> &BTreeSet<Valuation> {
        &self.s_plus
    }

    pub fn s_minus(&self) -> &BTreeSet<Valuation> {
        &self.s_minus
    }

    pub fn pool(&self) -> &BTreeSet<Valuation> {
        &self.pool
    }

    fn minterm_union(set: &BTreeSet<Valuation>) -> Predicate {
        Predicate::or_all(set.iter().map(|&v| valuation_minterm(v)))
    }
}

fn single_valuation(w: &[Letter]) -> Option<Valuation> {
    match w {
        [d] => d.as_valuation(),
        _ => None,
    }
}

impl Oracle for AdversarialPropTeacher {
    fn mq(&mut self, w: &[Letter]) -> Result<bool> {
        for d in w {
            self.alg.check_letter(d)?;
        }
        self.counts.mq += 1;
        let Some(v) = single_valuation(w) else { return Ok(false) };
        if self.pool.remove(&v) {
            self.s_minus.insert(v);
        }
        Ok(self.s_plus.contains(&v))
    }

    fn eq(&mut self, h: &Sfa) -> Result<EqAnswer> {
        if h.algebra() != self.alg {
            return Err(Error::AlgebraMismatch(format!("{} vs {}", h.algebra(), self.alg)));
        }
        self.counts.eq += 1;
        let acc = |v: Valuation| h.accepts(&[Letter::Val(v)]);
        if let Some(&v) = self.s_plus.iter().find(|&&v| !acc(v)) {
            return Ok(EqAnswer::Counterexample(vec![Letter::Val(v)], true));
        }
        if let Some(&v) = self.s_minus.iter().find(|&&v| acc(v)) {
            return Ok(EqAnswer::Counterexample(vec![Letter::Val(v)], false));
        }
        if let Some(&v) = self.pool.iter().find(|&&v| acc(v)) {
            self.pool.remove(&v);
            self.s_minus.insert(v);
            return Ok(EqAnswer::Counterexample(vec![Letter::Val(v)], false));
        }
        if let Some(&v) = self.pool.iter().next() {
            self.pool.remove(&v);
            self.s_plus.insert(v);
            return Ok(EqAnswer::Counterexample(vec![Letter::Val(v)], true));
        }
        let target = basic_sfa(self.alg, &Self::minterm_union(&self.s_plus))?;
        SfaTeacher::new(target)?.eq(h)
    }

    fn counts(&self) -> QueryCounts {
        self.counts
    }
}

/// Learns `phi` for the language of one-letter words satisfying it: every
/// unclassified valuation is queried once, then the disjunction of the
/// positive minterms is proposed until the teacher agrees.
pub fn enumerating_predicate_learner(k: u8, o: &mut dyn Oracle) -> Result<Predicate> {
    let alg = Algebra::prop(k)?;
    let mut known: BTreeMap<Valuation, bool> = BTreeMap::new();
    for b in 0..(1u32 << k) {
        let v = Valuation::new(k, b);
        if let std::collections::btree_map::Entry::Vacant(e) = known.entry(v) {
            let label = o.mq(&[Letter::Val(v)])?;
            e.insert(label);
        }
    }
    loop {
        let phi = Predicate::or_all(known.iter().filter(|(_, &b)| b).map(|(&v, _)| valuation_minterm(v)));
        match o.eq(&basic_sfa(alg, &phi)?)? {
            EqAnswer::Yes => return Ok(phi),
            EqAnswer::Counterexample(w, b) => {
                let Some(v) = single_valuation(&w) else {
                    return Err(Error::OracleInconsistent(format!(
                        "counterexample `{}` is not a one-letter word",
                        show_word(&w)
                    )));
                };
                if known.get(&v) == Some(&b) {
                    return Err(Error::OracleInconsistent(format!("{v} was already labeled {b}")));
                }
                known.insert(v, b);
            }
        }
    }
}

/// The same learner viewed as an SFA learner: it returns the basic SFA.
pub fn enumerating_sfa_learner(k: u8, o: &mut dyn Oracle) -> Result<Sfa> {
    let phi = enumerating_predicate_learner(k, o)?;
    basic_sfa(Algebra::prop(k)?, &phi)
}

/// Teacher for a predicate: membership of letters, equivalence of predicates.
pub trait AlgebraOracle {
    fn algebra(&self) -> Algebra;
    fn mq(&mut self, d: &Letter) -> bool;
    /// `None` when equivalent, else a letter with its correct label.
    fn eq(&mut self, psi: &Predicate) -> Option<(Letter, bool)>;
}

/// Honest predicate teacher.
pub struct PredicateTeacher {
    alg: Algebra,
    target: Predicate,
    pub counts: QueryCounts,
}

impl PredicateTeacher {
    pub fn new(alg: Algebra, target: Predicate) -> Result<Self> {
        alg.check_pred(&target)?;
        Ok(PredicateTeacher { alg, target, counts: QueryCounts::default() })
    }
}

impl AlgebraOracle for PredicateTeacher {
    fn algebra(&self) -> Algebra {
        self.alg
    }

    fn mq(&mut self, d: &Letter) -> bool {
        self.counts.mq += 1;
        self.alg.contains(&self.target, d)
    }

    fn eq(&mut self, psi: &Predicate) -> Option<(Letter, bool)> {
        self.counts.eq += 1;
        let a = self.alg.denote(&self.target);
        let b = self.alg.denote(psi);
        let diff = a.and(&self.alg.complement(&b)).or(&b.and(&self.alg.complement(&a)));
        diff.least().map(|d| (d, a.contains(&d)))
    }
}

/// Presents a predicate teacher as an SFA teacher for the basic-SFA
/// language of its target.
pub struct ReductionOracle<'a> {
    inner: &'a mut dyn AlgebraOracle,
    budget: usize,
    counts: QueryCounts,
    largest_issued: Option<Word>,
    answer: Option<Predicate>,
}

impl<'a> ReductionOracle<'a> {
    pub fn new(inner: &'a mut dyn AlgebraOracle, budget: usize) -> Self {
        ReductionOracle { inner, budget, counts: QueryCounts::default(), largest_issued: None, answer: None }
    }

    fn spend(&mut self) -> Result<()> {
        if self.counts.total() >= self.budget {
            return Err(Error::QueryBudget(self.budget));
        }
        Ok(())
    }

    /// The next accepted word of length at least two after the largest one
    /// issued so far, in length-then-lexicographic order over one
    /// representative letter per minterm of the hypothesis.
    fn fresh_long_word(&mut self, h: &Sfa) -> Result<Word> {
        let alg = h.algebra();
        let dens: Vec<_> = h.denotations();
        let reps: Vec<Letter> = minterms(alg, &dens, 1 << 20)?
            .into_iter()
            .filter_map(|(r, _)| r.least())
            .collect();
        let after = |w: &Word, last: &Option<Word>| match last {
            None => true,
            Some(l) => (w.len(), w) > (l.len(), l),
        };
        let mut first_accepted: Option<Word> = None;
        let mut layer: Vec<Word> = reps.iter().map(|&d| vec![d]).collect();
        let mut explored = 0usize;
        while !layer.is_empty() && explored < 200_000 {
            let mut next = Vec::new();
            for w in &layer {
                for &d in &reps {
                    let mut x = w.clone();
                    x.push(d);
                    explored += 1;
                    if h.accepts(&x) {
                        if after(&x, &self.largest_issued) {
                            return Ok(x);
                        }
                        first_accepted.get_or_insert(x.clone());
                    }
                    next.push(x);
                }
            }
            layer = next;
        }
        if let Some(w) = first_accepted {
            return Ok(w);
        }
        let longer = product(h, &long_words(alg), ProductMode::Intersect)?;
        crate::ops::shortest_accepted(&longer)
            .ok_or_else(|| Error::OracleInconsistent("hypothesis accepts no long word".into()))
    }

    pub fn answer(&self) -> Option<&Predicate> {
        self.answer.as_ref()
    }
}

impl Oracle for ReductionOracle<'_> {
    fn mq(&mut self, w: &[Letter]) -> Result<bool> {
        self.spend()?;
        self.counts.mq += 1;
        match w {
            [d] => Ok(self.inner.mq(d)),
            _ => Ok(false),
        }
    }

    fn eq(&mut self, h: &Sfa) -> Result<EqAnswer> {
        self.spend()?;
        self.counts.eq += 1;
        if h.algebra() != self.inner.algebra() {
            return Err(Error::AlgebraMismatch(format!("{} vs {}", h.algebra(), self.inner.algebra())));
        }
        if h.accepts(&[]) {
            return Ok(EqAnswer::Counterexample(Vec::new(), false));
        }
        match basic_predicate_of(h)? {
            Some(psi) => match self.inner.eq(&psi) {
                None => {
                    self.answer = Some(psi);
                    Ok(EqAnswer::Yes)
                }
                Some((d, b)) => Ok(EqAnswer::Counterexample(vec![d], b)),
            },
            None => {
                let w = self.fresh_long_word(h)?;
                if self.largest_issued.as_ref().is_none_or(|l| (w.len(), &w) > (l.len(), l)) {
                    self.largest_issued = Some(w.clone());
                }
                Ok(EqAnswer::Counterexample(w, false))
            }
        }
    }

    fn counts(&self) -> QueryCounts {
        self.counts
    }
}

/// Turns an SFA learner into a predicate learner by answering its queries
/// through a predicate teacher.
pub fn algebra_learner_from_sfa_learner<F>(sfa_learner: F, oracle: &mut dyn AlgebraOracle, budget: usize) -> Result<Predicate>
where
    F: FnOnce(&mut dyn Oracle) -> Result<Sfa>,
{
    let mut wrapper = ReductionOracle::new(oracle, budget);
    let h = sfa_learner(&mut wrapper)?;
    if let Some(psi) = wrapper.answer() {
        return Ok(psi.clone());
    }
    basic_predicate_of(&h)?.ok_or_else(|| Error::OracleInconsistent("learner returned a non-basic SFA".into()))
}
