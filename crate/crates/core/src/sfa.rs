//! Symbolic finite automata and their special forms.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::algebra::{Algebra, Denotation, Letter, Literal, Predicate};
use crate::error::{Error, Result};

/// Default bound on the number of transitions `to_neat` may produce.
pub const NEAT_TRANSITION_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub src: usize,
    pub pred: Predicate,
    pub dst: usize,
}

/// An SFA. States are indices into `names`; transitions keep insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sfa {
    algebra: Algebra,
    names: Vec<String>,
    initial: usize,
    accepting: BTreeSet<usize>,
    transitions: Vec<Transition>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    pub deterministic: bool,
    pub complete: bool,
    pub neat: bool,
    pub normalized: bool,
    pub feasible: bool,
}

/// Size of an SFA: states, maximal out-degree, largest predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeMetrics {
    pub n: usize,
    pub m: usize,
    pub l: usize,
}

impl Sfa {
    /// Validates and builds an SFA; duplicate transitions are dropped.
    pub fn new(
        algebra: Algebra,
        names: Vec<String>,
        initial: usize,
        accepting: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<Sfa> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        let mut seen_names = HashSet::new();
        for name in &names {
            if name.is_empty() || name.contains(char::is_whitespace) || name.contains('#') {
                return Err(Error::InvalidAutomaton(format!("bad state id `{name}`")));
            }
            if !seen_names.insert(name.as_str()) {
                return Err(Error::InvalidAutomaton(format!("duplicate state `{name}`")));
            }
        }
        if initial >= n {
            return Err(Error::InvalidAutomaton(format!("initial state {initial} out of range")));
        }
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        if let Some(&q) = accepting.iter().find(|&&q| q >= n) {
            return Err(Error::InvalidAutomaton(format!("accepting state {q} out of range")));
        }
        let mut seen = HashSet::new();
        let mut trans = Vec::new();
        for t in transitions {
            if t.src >= n || t.dst >= n {
                return Err(Error::InvalidAutomaton(format!("transition endpoint out of range: {} -> {}", t.src, t.dst)));
            }
            algebra.check_pred(&t.pred)?;
            if seen.insert(t.clone()) {
                trans.push(t);
            }
        }
        Ok(Sfa { algebra, names, initial, accepting, transitions: trans })
    }

    /// Builds an SFA from state names.
    pub fn build(
        algebra: Algebra,
        names: &[&str],
        initial: &str,
        accepting: &[&str],
        transitions: &[(&str, &str, Predicate)],
    ) -> Result<Sfa> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let idx = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::InvalidAutomaton(format!("unknown state `{s}`")))
        };
        let init = idx(initial)?;
        let acc = accepting.iter().map(|s| idx(s)).collect::<Result<Vec<_>>>()?;
        let trans = transitions
            .iter()
            .map(|(a, b, p)| Ok(Transition { src: idx(a)?, pred: p.clone(), dst: idx(b)? }))
            .collect::<Result<Vec<_>>>()?;
        Sfa::new(algebra, names.clone(), init, acc, trans)
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn state(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(&q)
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn outgoing(&self, q: usize) -> impl Iterator<Item = &Transition> + '_ {
        self.transitions.iter().filter(move |t| t.src == q)
    }

    /// Outgoing transitions grouped per state.
    pub fn out_lists(&self) -> Vec<Vec<&Transition>> {
        let mut out = vec![Vec::new(); self.num_states()];
        for t in &self.transitions {
            out[t.src].push(t);
        }
        out
    }

    /// States reachable from `set` by reading `d`.
    pub fn step(&self, set: &BTreeSet<usize>, d: &Letter) -> BTreeSet<usize> {
        self.transitions
            .iter()
            .filter(|t| set.contains(&t.src) && self.algebra.contains(&t.pred, d))
            .map(|t| t.dst)
            .collect()
    }

    /// Membership by propagating the set of reachable states.
    pub fn accepts(&self, w: &[Letter]) -> bool {
        let mut frontier: BTreeSet<usize> = [self.initial].into_iter().collect();
        for d in w {
            frontier = self.step(&frontier, d);
            if frontier.is_empty() {
                return false;
            }
        }
        frontier.iter().any(|q| self.accepting.contains(q))
    }

    pub fn denotations(&self) -> Vec<Denotation> {
        self.transitions.iter().map(|t| self.algebra.denote(&t.pred)).collect()
    }

    pub fn classify(&self) -> Classification {
        let dens = self.denotations();
        let top = self.algebra.top();
        let mut c = Classification {
            deterministic: true,
            complete: true,
            neat: self.transitions.iter().all(|t| t.pred.is_basic()),
            normalized: true,
            feasible: dens.iter().all(|d| !d.is_empty()),
        };
        let mut by_state: Vec<Vec<usize>> = vec![Vec::new(); self.num_states()];
        for (i, t) in self.transitions.iter().enumerate() {
            by_state[t.src].push(i);
        }
        let mut pairs = HashSet::new();
        for t in &self.transitions {
            if !pairs.insert((t.src, t.dst)) {
                c.normalized = false;
            }
        }
        for outs in &by_state {
            let mut union = self.algebra.complement(&top);
            for (a, &i) in outs.iter().enumerate() {
                if c.deterministic && outs[a + 1..].iter().any(|&j| !dens[i].and(&dens[j]).is_empty()) {
                    c.deterministic = false;
                }
                union = union.or(&dens[i]);
            }
            if union != top {
                c.complete = false;
            }
        }
        c
    }

    pub fn size_metrics(&self) -> SizeMetrics {
        let mut deg = vec![0usize; self.num_states()];
        for t in &self.transitions {
            deg[t.src] += 1;
        }
        SizeMetrics {
            n: self.num_states(),
            m: deg.into_iter().max().unwrap_or(0),
            l: self.transitions.iter().map(|t| t.pred.size()).max().unwrap_or(0),
        }
    }

    fn with_transitions(&self, transitions: Vec<Transition>) -> Sfa {
        let mut seen = HashSet::new();
        let transitions = transitions.into_iter().filter(|t| seen.insert(t.clone())).collect();
        Sfa { transitions, ..self.clone() }
    }

    /// Splits every predicate into basic disjuncts, one transition each.
    /// Interval predicates go through their canonical interval list;
    /// propositional ones through syntactic DNF. Empty disjuncts vanish.
    pub fn to_neat(&self) -> Result<Sfa> {
        self.to_neat_capped(NEAT_TRANSITION_CAP)
    }

    pub fn to_neat_capped(&self, cap: usize) -> Result<Sfa> {
        let mut out = Vec::new();
        for t in &self.transitions {
            if t.pred.is_basic() {
                out.push(t.clone());
                continue;
            }
            let pieces: Vec<Predicate> = match self.algebra {
                Algebra::Prop { .. } => t
                    .pred
                    .prop_dnf(cap)?
                    .into_iter()
                    .filter(|c| !c.iter().any(|l| c.contains(&l.negate())))
                    .map(|mut c: Vec<Literal>| {
                        c.sort();
                        Predicate::and_all(c.into_iter().map(Predicate::Lit))
                    })
                    .collect(),
                _ => {
                    let list = self.algebra.canonical_intervals(&t.pred)?;
                    list.spans().iter().map(|s| Predicate::Interval(s.lo, s.hi)).collect()
                }
            };
            for p in pieces {
                out.push(Transition { src: t.src, pred: p, dst: t.dst });
            }
            if out.len() > cap {
                return Err(Error::LimitExceeded(format!("to_neat exceeds {cap} transitions")));
            }
        }
        Ok(self.with_transitions(out))
    }

    /// Merges parallel transitions into one disjunction per state pair.
    pub fn to_normalized(&self) -> Sfa {
        let mut groups: BTreeMap<(usize, usize), Vec<Predicate>> = BTreeMap::new();
        let mut order = Vec::new();
        for t in &self.transitions {
            let e = groups.entry((t.src, t.dst)).or_default();
            if e.is_empty() {
                order.push((t.src, t.dst));
            }
            e.push(t.pred.clone());
        }
        let out = order
            .into_iter()
            .map(|(src, dst)| {
                let preds = groups.remove(&(src, dst)).unwrap_or_default();
                Transition { src, pred: Predicate::or_all(preds), dst }
            })
            .collect();
        self.with_transitions(out)
    }

    /// Drops transitions with unsatisfiable predicates.
    pub fn make_feasible(&self) -> Sfa {
        let out = self.transitions.iter().filter(|t| self.algebra.is_sat(&t.pred)).cloned().collect();
        self.with_transitions(out)
    }

    /// Routes every letter without a successor to a fresh rejecting sink.
    ///
    /// Neat interval automata get one transition per gap between the
    /// outgoing intervals; otherwise each state gets a single transition
    /// labeled with the negated disjunction of its outgoing predicates.
    pub fn complete(&self) -> Sfa {
        let gap_fill = self.algebra.is_monotonic() && self.transitions.iter().all(|t| t.pred.is_basic());
        self.complete_with(gap_fill)
    }

    /// Completion using the single negated-disjunction transition per state.
    pub fn complete_general(&self) -> Sfa {
        self.complete_with(false)
    }

    fn complete_with(&self, gap_fill: bool) -> Sfa {
        let sink = self.num_states();
        let outs = self.out_lists();
        let mut extra = Vec::new();
        for (q, ts) in outs.iter().enumerate() {
            let union = ts
                .iter()
                .fold(self.algebra.complement(&self.algebra.top()), |acc, t| acc.or(&self.algebra.denote(&t.pred)));
            let missing = self.algebra.complement(&union);
            if missing.is_empty() {
                continue;
            }
            if gap_fill {
                for p in self.algebra.basic_cover(&missing) {
                    extra.push(Transition { src: q, pred: p, dst: sink });
                }
            } else {
                let covered = Predicate::or_all(ts.iter().map(|t| t.pred.clone()));
                extra.push(Transition { src: q, pred: Predicate::not(covered), dst: sink });
            }
        }
        if extra.is_empty() {
            return self.clone();
        }
        let mut names = self.names.clone();
        names.push(fresh_name(&self.names, "sink"));
        let mut transitions = self.transitions.clone();
        transitions.extend(extra);
        transitions.push(Transition { src: sink, pred: self.algebra.top_atom(), dst: sink });
        Sfa { algebra: self.algebra, names, initial: self.initial, accepting: self.accepting.clone(), transitions }
    }

    /// Equality up to the order of transitions.
    pub fn same_structure(&self, other: &Sfa) -> bool {
        let set = |m: &Sfa| m.transitions.iter().cloned().collect::<HashSet<_>>();
        self.algebra == other.algebra
            && self.names == other.names
            && self.initial == other.initial
            && self.accepting == other.accepting
            && set(self) == set(other)
    }

    /// Same automaton with the accepting set replaced.
    pub fn with_accepting(&self, accepting: impl IntoIterator<Item = usize>) -> Sfa {
        Sfa { accepting: accepting.into_iter().collect(), ..self.clone() }
    }

    /// States reachable from the initial state over satisfiable transitions.
    pub fn reachable(&self) -> Vec<bool> {
        let feasible: Vec<bool> = self.transitions.iter().map(|t| self.algebra.is_sat(&t.pred)).collect();
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for (i, t) in self.transitions.iter().enumerate() {
                if t.src == q && feasible[i] && !seen[t.dst] {
                    seen[t.dst] = true;
                    queue.push_back(t.dst);
                }
            }
        }
        seen
    }

    /// Restriction to the states reachable from the initial state.
    pub fn trim_unreachable(&self) -> Sfa {
        let keep = self.reachable();
        let mut map = vec![usize::MAX; self.num_states()];
        let mut names = Vec::new();
        for q in 0..self.num_states() {
            if keep[q] {
                map[q] = names.len();
                names.push(self.names[q].clone());
            }
        }
        let transitions = self
            .transitions
            .iter()
            .filter(|t| keep[t.src] && keep[t.dst])
            .map(|t| Transition { src: map[t.src], pred: t.pred.clone(), dst: map[t.dst] })
            .collect();
        let accepting = self.accepting.iter().filter(|&&q| keep[q]).map(|&q| map[q]).collect();
        Sfa { algebra: self.algebra, names, initial: map[self.initial], accepting, transitions }
    }

    /// Parses the line-oriented text format.
    pub fn parse(text: &str) -> Result<Sfa> {
        let mut algebra: Option<Algebra> = None;
        let mut names: Option<Vec<String>> = None;
        let mut initial: Option<(usize, String)> = None;
        let mut accepting: Option<(usize, Vec<String>)> = None;
        let mut trans: Vec<(usize, String, String, String)> = Vec::new();
        let perr = |line: usize, msg: String| Error::Parse { line, msg };
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = match line.split_once(char::is_whitespace) {
                Some((h, r)) => (h, r.trim()),
                None => (line, ""),
            };
            match head {
                "algebra" => {
                    if algebra.is_some() {
                        return Err(perr(line_no, "duplicate `algebra` directive".into()));
                    }
                    algebra = Some(rest.parse().map_err(|e: Error| perr(line_no, e.to_string()))?);
                }
                "states" => {
                    if names.is_some() {
                        return Err(perr(line_no, "duplicate `states` directive".into()));
                    }
                    names = Some(rest.split_whitespace().map(String::from).collect());
                }
                "initial" => {
                    if initial.is_some() {
                        return Err(perr(line_no, "duplicate `initial` directive".into()));
                    }
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    if toks.len() != 1 {
                        return Err(perr(line_no, "`initial` takes exactly one state".into()));
                    }
                    initial = Some((line_no, toks[0].to_string()));
                }
                "accepting" => {
                    if accepting.is_some() {
                        return Err(perr(line_no, "duplicate `accepting` directive".into()));
                    }
                    accepting = Some((line_no, rest.split_whitespace().map(String::from).collect()));
                }
                "trans" => {
                    let mut it = rest.splitn(3, char::is_whitespace);
                    let (Some(a), Some(b), Some(p)) = (it.next(), it.next(), it.next()) else {
                        return Err(perr(line_no, "`trans` needs a source, a target and a predicate".into()));
                    };
                    trans.push((line_no, a.to_string(), b.trim().to_string(), p.trim().to_string()));
                }
                other => return Err(perr(line_no, format!("unknown directive `{other}`"))),
            }
        }
        let last = text.lines().count().max(1);
        let algebra = algebra.ok_or_else(|| perr(last, "missing `algebra` directive".into()))?;
        let names = names.ok_or_else(|| perr(last, "missing `states` directive".into()))?;
        let (init_line, init) = initial.ok_or_else(|| perr(last, "missing `initial` directive".into()))?;
        let lookup = |line: usize, s: &str| {
            names.iter().position(|n| n == s).ok_or_else(|| perr(line, format!("unknown state `{s}`")))
        };
        let initial = lookup(init_line, &init)?;
        let accepting = match accepting {
            Some((line, acc)) => acc.iter().map(|s| lookup(line, s)).collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        let mut transitions = Vec::new();
        for (line, a, b, p) in &trans {
            let pred = algebra.parse_pred(p).map_err(|e| perr(*line, e.to_string()))?;
            transitions.push(Transition { src: lookup(*line, a)?, pred, dst: lookup(*line, b)? });
        }
        Sfa::new(algebra, names, initial, accepting, transitions).map_err(|e| perr(last, e.to_string()))
    }
}

/// `base`, or `base` with a numeric suffix, not clashing with `taken`.
pub(crate) fn fresh_name(taken: &[String], base: &str) -> String {
    if !taken.iter().any(|n| n == base) {
        return base.to_string();
    }
    (1..).map(|i| format!("{base}{i}")).find(|c| !taken.contains(c)).expect("unbounded suffixes")
}

impl fmt::Display for Sfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {}", self.algebra)?;
        writeln!(f, "states {}", self.names.join(" "))?;
        writeln!(f, "initial {}", self.names[self.initial])?;
        let acc: Vec<&str> = self.accepting.iter().map(|&q| self.names[q].as_str()).collect();
        if acc.is_empty() {
            writeln!(f, "accepting")?;
        } else {
            writeln!(f, "accepting {}", acc.join(" "))?;
        }
        for t in &self.transitions {
            writeln!(f, "trans {} {} {}", self.names[t.src], self.names[t.dst], t.pred)?;
        }
        Ok(())
    }
}
