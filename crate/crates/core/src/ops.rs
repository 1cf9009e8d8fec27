//! Boolean operations, determinization, minimization and decision procedures.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::algebra::{Algebra, Denotation, Letter, Predicate, Word};
use crate::error::{Error, Result};
use crate::sfa::{Sfa, Transition};

/// Resource bounds for the exponential constructions.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_states: usize,
    pub max_minterms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_states: 10_000, max_minterms: 1 << 20 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    Intersect,
    Union,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinForm {
    Neat,
    Normalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InclusionMode {
    Subset,
    Equiv,
}

/// Outcome of an inclusion or equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// A shortest word on which the automata disagree.
    Fails(Word),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

fn same_algebra(m1: &Sfa, m2: &Sfa) -> Result<Algebra> {
    if m1.algebra() != m2.algebra() {
        return Err(Error::AlgebraMismatch(format!("{} vs {}", m1.algebra(), m2.algebra())));
    }
    Ok(m1.algebra())
}

fn require_det(m: &Sfa, op: &'static str) -> Result<()> {
    if !m.classify().deterministic {
        return Err(Error::Precondition { op, flag: "deterministic" });
    }
    Ok(())
}

/// Synchronous product over the reachable state pairs.
pub fn product(m1: &Sfa, m2: &Sfa, mode: ProductMode) -> Result<Sfa> {
    let alg = same_algebra(m1, m2)?;
    if mode == ProductMode::Union {
        for m in [m1, m2] {
            let c = m.classify();
            if !c.deterministic {
                return Err(Error::Precondition { op: "union", flag: "deterministic" });
            }
            if !c.complete {
                return Err(Error::Precondition { op: "union", flag: "complete" });
            }
        }
    }
    let (pairs, transitions) = product_core(alg, m1, m2);
    let names = pairs.iter().map(|&(a, b)| format!("({},{})", m1.name(a), m2.name(b))).collect();
    let accepting = pairs.iter().enumerate().filter_map(|(i, &(a, b))| {
        let keep = match mode {
            ProductMode::Intersect => m1.is_accepting(a) && m2.is_accepting(b),
            ProductMode::Union => m1.is_accepting(a) || m2.is_accepting(b),
        };
        keep.then_some(i)
    });
    Sfa::new(alg, names, 0, accepting.collect::<Vec<_>>(), transitions)
}

// reachable state pairs and the synchronized transitions between them
fn product_core(alg: Algebra, m1: &Sfa, m2: &Sfa) -> (Vec<(usize, usize)>, Vec<Transition>) {
    let out1 = m1.out_lists();
    let out2 = m2.out_lists();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = vec![(m1.initial(), m2.initial())];
    index.insert(pairs[0], 0);
    let mut transitions = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (q1, q2) = pairs[i];
        for t1 in &out1[q1] {
            for t2 in &out2[q2] {
                let pred = Predicate::and(t1.pred.clone(), t2.pred.clone());
                if !alg.is_sat(&pred) {
                    continue;
                }
                let key = (t1.dst, t2.dst);
                let dst = *index.entry(key).or_insert_with(|| {
                    pairs.push(key);
                    pairs.len() - 1
                });
                transitions.push(Transition { src: i, pred, dst });
            }
        }
        i += 1;
    }
    (pairs, transitions)
}

/// Completes with a single sink transition per state, then swaps accepting
/// and rejecting states.
pub fn complement(m: &Sfa) -> Result<Sfa> {
    require_det(m, "complement")?;
    let c = m.complete_general();
    let flipped: Vec<usize> = (0..c.num_states()).filter(|&q| !c.is_accepting(q)).collect();
    Ok(c.with_accepting(flipped))
}

/// Regions of the domain cut out by every sign choice over `dens`, with the
/// indices of the denotations taken positively. Identical denotations share
/// one sign. Empty regions are pruned as soon as they appear.
pub fn minterms(alg: Algebra, dens: &[Denotation], cap: usize) -> Result<Vec<(Denotation, Vec<usize>)>> {
    let mut groups: Vec<(Denotation, Vec<usize>)> = Vec::new();
    for (i, d) in dens.iter().enumerate() {
        match groups.iter_mut().find(|(g, _)| g == d) {
            Some((_, ids)) => ids.push(i),
            None => groups.push((d.clone(), vec![i])),
        }
    }
    let mut parts: Vec<(Denotation, Vec<usize>)> = vec![(alg.top(), Vec::new())];
    for (d, ids) in &groups {
        let neg = alg.complement(d);
        let mut next = Vec::with_capacity(parts.len() * 2);
        for (region, pos) in parts {
            let inside = region.and(d);
            let outside = region.and(&neg);
            if !inside.is_empty() {
                let mut p = pos.clone();
                p.extend(ids);
                next.push((inside, p));
            }
            if !outside.is_empty() {
                next.push((outside, pos));
            }
        }
        if next.len() > cap {
            return Err(Error::LimitExceeded(format!("more than {cap} minterms")));
        }
        parts = next;
    }
    for (_, pos) in parts.iter_mut() {
        pos.sort_unstable();
    }
    parts.sort_by_key(|a| a.0.least());
    Ok(parts)
}

pub fn determinize(m: &Sfa) -> Result<Sfa> {
    determinize_with(m, Limits::default())
}

/// Subset construction over minterms of the outgoing predicates.
pub fn determinize_with(m: &Sfa, limits: Limits) -> Result<Sfa> {
    let alg = m.algebra();
    let outs = m.out_lists();
    let start: BTreeSet<usize> = [m.initial()].into_iter().collect();
    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut subsets = vec![start.clone()];
    index.insert(start, 0);
    let mut transitions = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        let ts: Vec<&Transition> = subsets[i].iter().flat_map(|&q| outs[q].iter().copied()).collect();
        let dens: Vec<Denotation> = ts.iter().map(|t| alg.denote(&t.pred)).collect();
        for (region, pos) in minterms(alg, &dens, limits.max_minterms)? {
            if pos.is_empty() {
                continue;
            }
            let target: BTreeSet<usize> = pos.iter().map(|&j| ts[j].dst).collect();
            let dst = match index.get(&target) {
                Some(&d) => d,
                None => {
                    if subsets.len() >= limits.max_states {
                        return Err(Error::LimitExceeded(format!("more than {} subset states", limits.max_states)));
                    }
                    subsets.push(target.clone());
                    index.insert(target, subsets.len() - 1);
                    subsets.len() - 1
                }
            };
            let pred = minterm_predicate(alg, &region, &ts, &dens, &pos);
            transitions.push(Transition { src: i, pred, dst });
        }
        i += 1;
    }
    let names = subsets
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(|&q| m.name(q)).collect::<Vec<_>>().join(",")))
        .collect();
    let accepting: Vec<usize> =
        (0..subsets.len()).filter(|&i| subsets[i].iter().any(|&q| m.is_accepting(q))).collect();
    Sfa::new(alg, names, 0, accepting, transitions)
}

// Interval regions print as their maximal intervals; propositional regions
// as the conjunction of signed source predicates.
fn minterm_predicate(alg: Algebra, region: &Denotation, ts: &[&Transition], dens: &[Denotation], pos: &[usize]) -> Predicate {
    if alg.is_monotonic() {
        return alg.predicate_of(region);
    }
    let mut seen: Vec<&Denotation> = Vec::new();
    let mut parts = Vec::new();
    for (j, d) in dens.iter().enumerate() {
        if seen.contains(&d) {
            continue;
        }
        seen.push(d);
        let p = ts[j].pred.clone();
        parts.push(if pos.contains(&j) { p } else { Predicate::not(p) });
    }
    Predicate::and_all(parts)
}

/// Moore partition refinement on a finite transition table; returns the
/// block index of every state.
pub fn moore_classes(accepting: &[bool], delta: &[Vec<usize>]) -> Vec<usize> {
    let n = accepting.len();
    let mut class: Vec<usize> = accepting.iter().map(|&a| usize::from(a)).collect();
    let mut count = class.iter().collect::<BTreeSet<_>>().len();
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next = vec![0; n];
        for q in 0..n {
            let sig = (class[q], delta[q].iter().map(|&p| class[p]).collect::<Vec<_>>());
            let len = ids.len();
            next[q] = *ids.entry(sig).or_insert(len);
        }
        let new_count = ids.len();
        class = next;
        if new_count == count {
            return class;
        }
        count = new_count;
    }
}

pub fn minimize(m: &Sfa, form: MinForm) -> Result<Sfa> {
    minimize_with(m, form, Limits::default())
}

/// Minimal deterministic complete SFA with canonical state names and
/// transition order: states are numbered `s0, s1, ..` breadth-first from the
/// initial state, and each state lists its transitions by least letter.
pub fn minimize_with(m: &Sfa, form: MinForm, limits: Limits) -> Result<Sfa> {
    let c = m.classify();
    if !c.deterministic {
        return Err(Error::Precondition { op: "minimize", flag: "deterministic" });
    }
    if !c.complete {
        return Err(Error::Precondition { op: "minimize", flag: "complete" });
    }
    let alg = m.algebra();
    let m = m.trim_unreachable();
    let dens = m.denotations();
    let regions = minterms(alg, &dens, limits.max_minterms)?;
    let reps: Vec<Letter> = regions.iter().map(|(r, _)| r.least().expect("nonempty minterm")).collect();
    let n = m.num_states();
    let mut delta = vec![vec![usize::MAX; regions.len()]; n];
    for (k, (_, pos)) in regions.iter().enumerate() {
        for &j in pos {
            let t = &m.transitions()[j];
            delta[t.src][k] = t.dst;
        }
    }
    for (q, row) in delta.iter().enumerate() {
        if let Some(k) = row.iter().position(|&d| d == usize::MAX) {
            // complete automata have a successor for every letter
            return Err(Error::InvalidAutomaton(format!("state `{}` has no move on {}", m.name(q), reps[k])));
        }
    }
    let accepting: Vec<bool> = (0..n).map(|q| m.is_accepting(q)).collect();
    let class = moore_classes(&accepting, &delta);
    let num_classes = class.iter().max().map_or(0, |&c| c + 1);
    let mut rep_state = vec![usize::MAX; num_classes];
    for q in 0..n {
        if rep_state[class[q]] == usize::MAX {
            rep_state[class[q]] = q;
        }
    }
    // region of letters leading from class c to each target class
    let mut moves: Vec<Vec<(usize, Denotation)>> = Vec::with_capacity(num_classes);
    for &q in &rep_state {
        let mut by_target: BTreeMap<usize, Denotation> = BTreeMap::new();
        for (k, (region, _)) in regions.iter().enumerate() {
            let t = class[delta[q][k]];
            match by_target.get_mut(&t) {
                Some(d) => *d = d.or(region),
                None => {
                    by_target.insert(t, region.clone());
                }
            }
        }
        let mut list: Vec<(usize, Denotation)> = by_target.into_iter().collect();
        list.sort_by_key(|a| a.1.least());
        moves.push(list);
    }
    let mut order = vec![usize::MAX; num_classes];
    let mut queue = VecDeque::from([class[m.initial()]]);
    order[class[m.initial()]] = 0;
    let mut next_id = 1;
    let mut bfs = Vec::new();
    while let Some(cl) = queue.pop_front() {
        bfs.push(cl);
        for (t, _) in &moves[cl] {
            if order[*t] == usize::MAX {
                order[*t] = next_id;
                next_id += 1;
                queue.push_back(*t);
            }
        }
    }
    let mut transitions = Vec::new();
    for &cl in &bfs {
        let mut items: Vec<(Option<Letter>, Predicate, usize)> = Vec::new();
        for (t, region) in &moves[cl] {
            match form {
                MinForm::Normalized => items.push((region.least(), alg.predicate_of(region), order[*t])),
                MinForm::Neat => {
                    for p in alg.basic_cover(region) {
                        let least = alg.witness(&p);
                        items.push((least, p, order[*t]));
                    }
                }
            }
        }
        items.sort_by_key(|a| a.0);
        for (_, pred, dst) in items {
            transitions.push(Transition { src: order[cl], pred, dst });
        }
    }
    let names = (0..num_classes).map(|i| format!("s{i}")).collect();
    let acc: Vec<usize> = (0..num_classes).filter(|&cl| accepting[rep_state[cl]]).map(|cl| order[cl]).collect();
    Sfa::new(alg, names, 0, acc, transitions)
}

/// Whether no word is accepted.
pub fn is_empty(m: &Sfa) -> bool {
    shortest_accepted(m).is_none()
}

/// A shortest accepted word; edges are read with their least letter.
pub fn shortest_accepted(m: &Sfa) -> Option<Word> {
    let alg = m.algebra();
    let outs = m.out_lists();
    let mut edges: Vec<Vec<(Letter, usize)>> = vec![Vec::new(); m.num_states()];
    for (q, ts) in outs.iter().enumerate() {
        for t in ts {
            if let Some(d) = alg.witness(&t.pred) {
                edges[q].push((d, t.dst));
            }
        }
        edges[q].sort();
    }
    let mut parent: Vec<Option<(usize, Letter)>> = vec![None; m.num_states()];
    let mut seen = vec![false; m.num_states()];
    seen[m.initial()] = true;
    let mut queue = VecDeque::from([m.initial()]);
    while let Some(q) = queue.pop_front() {
        if m.is_accepting(q) {
            let mut word = Vec::new();
            let mut cur = q;
            while let Some((p, d)) = parent[cur] {
                word.push(d);
                cur = p;
            }
            word.reverse();
            return Some(word);
        }
        for &(d, r) in &edges[q] {
            if !seen[r] {
                seen[r] = true;
                parent[r] = Some((q, d));
                queue.push_back(r);
            }
        }
    }
    None
}

/// Decides `L(m1) ⊆ L(m2)` or `L(m1) = L(m2)` for deterministic inputs,
/// returning a shortest separating word on failure.
pub fn includes(m1: &Sfa, m2: &Sfa, mode: InclusionMode) -> Result<Verdict> {
    same_algebra(m1, m2)?;
    require_det(m1, "includes")?;
    require_det(m2, "includes")?;
    let a = m1.complete_general();
    let b = m2.complete_general();
    let (pairs, transitions) = product_core(m1.algebra(), &a, &b);
    let names = (0..pairs.len()).map(|i| format!("p{i}")).collect();
    let diff = Sfa::new(m1.algebra(), names, 0, Vec::new(), transitions)?;
    let bad: Vec<usize> = (0..diff.num_states())
        .filter(|&s| {
            let (p, q) = pairs[s];
            match mode {
                InclusionMode::Subset => a.is_accepting(p) && !b.is_accepting(q),
                InclusionMode::Equiv => a.is_accepting(p) != b.is_accepting(q),
            }
        })
        .collect();
    match shortest_accepted(&diff.with_accepting(bad)) {
        None => Ok(Verdict::Holds),
        Some(w) => Ok(Verdict::Fails(w)),
    }
}

pub fn equivalent(m1: &Sfa, m2: &Sfa) -> Result<Verdict> {
    includes(m1, m2, InclusionMode::Equiv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_predicate;

    fn p(s: &str) -> Predicate {
        parse_predicate(s).unwrap()
    }

    fn w(xs: &[i64]) -> Word {
        xs.iter().map(|&x| Letter::num(x)).collect()
    }

    fn bands() -> Sfa {
        Sfa::build(
            Algebra::IntervalNat,
            &["q0", "q1"],
            "q0",
            &["q1"],
            &[
                ("q0", "q1", p("[0,100)")),
                ("q0", "q0", p("[100,inf)")),
                ("q1", "q1", p("[0,200)")),
                ("q1", "q0", p("[200,inf)")),
            ],
        )
        .unwrap()
    }

    fn universal() -> Sfa {
        Sfa::build(Algebra::IntervalNat, &["u"], "u", &["u"], &[("u", "u", Predicate::True)]).unwrap()
    }

    #[test]
    fn product_identity_and_disjointness() {
        let m = bands();
        let id = product(&m, &universal(), ProductMode::Intersect).unwrap();
        assert!(equivalent(&id, &m).unwrap().holds());
        let none = product(&m, &complement(&m).unwrap(), ProductMode::Intersect).unwrap();
        assert!(is_empty(&none));
        assert!(product(&m, &Sfa::build(Algebra::IntervalNat, &["a"], "a", &[], &[]).unwrap(), ProductMode::Union).is_err());
    }

    #[test]
    fn complement_flips_membership() {
        let m = bands();
        let c = complement(&m).unwrap();
        assert!(c.accepts(&[]));
        assert!(!c.accepts(&w(&[0, 100])));
        assert!(equivalent(&complement(&c).unwrap(), &m).unwrap().holds());
    }

    #[test]
    fn determinize_splits_overlaps() {
        let m = Sfa::build(
            Algebra::IntervalNat,
            &["q0", "q1", "q2"],
            "q0",
            &["q2"],
            &[("q0", "q1", p("[0,100)")), ("q0", "q2", p("[50,200)"))],
        )
        .unwrap();
        let d = determinize(&m).unwrap();
        assert!(d.classify().deterministic);
        let mut out: Vec<(String, String)> = d
            .outgoing(d.initial())
            .map(|t| (t.pred.to_string(), d.name(t.dst).to_string()))
            .collect();
        out.sort();
        assert_eq!(
            out,
            vec![
                ("[0,50)".to_string(), "{q1}".to_string()),
                ("[100,200)".to_string(), "{q2}".to_string()),
                ("[50,100)".to_string(), "{q1,q2}".to_string()),
            ]
        );
    }

    #[test]
    fn minimize_merges_twins() {
        let m = Sfa::build(
            Algebra::IntervalNat,
            &["a", "b", "c"],
            "a",
            &["b", "c"],
            &[
                ("a", "b", p("[0,10)")),
                ("a", "c", p("[10,inf)")),
                ("b", "b", p("[0,inf)")),
                ("c", "c", p("[0,inf)")),
            ],
        )
        .unwrap();
        let min = minimize(&m, MinForm::Neat).unwrap();
        assert_eq!(min.num_states(), 2);
        assert_eq!(minimize(&min, MinForm::Neat).unwrap(), min);
        let f = minimize(&bands(), MinForm::Neat).unwrap();
        assert_eq!(f.num_states(), 2);
        assert!(equivalent(&f, &bands()).unwrap().holds());
    }

    #[test]
    fn normalized_minimum_orders_by_least_letter() {
        let m = Sfa::build(
            Algebra::IntervalNat,
            &["a", "b"],
            "a",
            &["b"],
            &[("a", "b", p("[5,10) | [0,2)")), ("a", "a", p("![5,10) & ![0,2)")), ("b", "b", Predicate::True)],
        )
        .unwrap();
        let min = minimize(&m, MinForm::Normalized).unwrap();
        let preds: Vec<String> = min.outgoing(0).map(|t| t.pred.to_string()).collect();
        assert_eq!(preds, vec!["[0,2) | [5,10)", "[2,5) | [10,inf)"]);
    }

    #[test]
    fn emptiness() {
        let none = Sfa::build(Algebra::IntervalNat, &["a"], "a", &[], &[("a", "a", Predicate::True)]).unwrap();
        assert!(is_empty(&none));
        let blocked =
            Sfa::build(Algebra::IntervalNat, &["a", "b"], "a", &["b"], &[("a", "b", p("[5,5)"))]).unwrap();
        assert!(is_empty(&blocked));
        assert!(!is_empty(&bands()));
    }

    #[test]
    fn inclusion_and_counterexamples() {
        let m = bands();
        assert!(equivalent(&m, &m).unwrap().holds());
        let c = complement(&m).unwrap();
        assert_eq!(equivalent(&m, &c).unwrap(), Verdict::Fails(vec![]));
        let meet = product(&m, &c, ProductMode::Intersect).unwrap();
        assert!(includes(&meet, &m, InclusionMode::Subset).unwrap().holds());
        assert_eq!(includes(&m, &meet, InclusionMode::Subset).unwrap(), Verdict::Fails(w(&[0])));
        let nd = Sfa::build(
            Algebra::IntervalNat,
            &["a", "b"],
            "a",
            &["b"],
            &[("a", "b", p("[0,10)")), ("a", "a", p("[5,20)"))],
        )
        .unwrap();
        assert!(matches!(includes(&nd, &m, InclusionMode::Subset), Err(Error::Precondition { .. })));
    }
}
