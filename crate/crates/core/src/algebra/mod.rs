//! Effective Boolean algebras.
//!
//! Two families are provided: the interval algebra over the extended
//! integers (restricted to `N ∪ {inf}` or `Z ∪ {-inf, inf}`), whose atoms are
//! half-open intervals `[a, b)`, and the propositional algebra over `k`
//! propositions, whose domain is the set of all `2^k` valuations.
//!
//! Predicates are plain parse trees ([`Predicate`]); the algebra gives them
//! meaning. Semantic questions go through a [`Denotation`], which is a
//! canonical interval list for the interval kinds and a truth table for the
//! propositional kind.

mod interval;
mod letter;
mod parse;
mod predicate;
mod table;

use std::fmt;
use std::str::FromStr;

pub use interval::{IntervalList, Span};
pub use letter::{show_word, Ext, Letter, Valuation, Word};
pub use parse::parse_predicate;
pub use predicate::{Literal, Predicate};
pub use table::TruthTable;

use crate::error::{Error, Result};

/// Largest supported number of propositions.
pub const MAX_PROPS: u8 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    /// Intervals over `N ∪ {inf}`.
    IntervalNat,
    /// Intervals over `Z ∪ {-inf, inf}`.
    IntervalInt,
    /// Propositional formulas over `p1..pk`.
    Prop { k: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connective {
    And,
    Or,
    Not,
}

/// Semantics of a predicate in its algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Denotation {
    Intervals(IntervalList),
    Table(TruthTable),
}

impl Denotation {
    pub fn is_empty(&self) -> bool {
        match self {
            Denotation::Intervals(l) => l.is_empty(),
            Denotation::Table(t) => t.is_empty(),
        }
    }

    pub fn and(&self, other: &Denotation) -> Denotation {
        match (self, other) {
            (Denotation::Intervals(a), Denotation::Intervals(b)) => Denotation::Intervals(a.intersect(b)),
            (Denotation::Table(a), Denotation::Table(b)) => Denotation::Table(a.and(b)),
            _ => panic!("denotations from different algebras"),
        }
    }

    pub fn or(&self, other: &Denotation) -> Denotation {
        match (self, other) {
            (Denotation::Intervals(a), Denotation::Intervals(b)) => Denotation::Intervals(a.union(b)),
            (Denotation::Table(a), Denotation::Table(b)) => Denotation::Table(a.or(b)),
            _ => panic!("denotations from different algebras"),
        }
    }

    /// Least element under the domain order.
    pub fn least(&self) -> Option<Letter> {
        match self {
            Denotation::Intervals(l) => l.min().map(Letter::Num),
            Denotation::Table(t) => t.least().map(Letter::Val),
        }
    }

    pub fn contains(&self, d: &Letter) -> bool {
        match (self, d) {
            (Denotation::Intervals(l), Letter::Num(e)) => l.contains(*e),
            (Denotation::Table(t), Letter::Val(v)) => v.width() == t.k() && t.get(v.bits()),
            _ => false,
        }
    }
}

impl Algebra {
    pub fn prop(k: u8) -> Result<Algebra> {
        if k == 0 || k > MAX_PROPS {
            return Err(Error::InvalidAlgebra(format!("prop needs 1 <= k <= {MAX_PROPS}, got {k}")));
        }
        Ok(Algebra::Prop { k })
    }

    /// Totally ordered domain with interval atoms.
    pub fn is_monotonic(self) -> bool {
        matches!(self, Algebra::IntervalNat | Algebra::IntervalInt)
    }

    pub(crate) fn require_monotonic(self, op: &'static str) -> Result<()> {
        if self.is_monotonic() {
            Ok(())
        } else {
            Err(Error::WrongAlgebraKind { op, expected: "a monotonic (interval)" })
        }
    }

    pub(crate) fn dmin_ext(self) -> Ext {
        match self {
            Algebra::IntervalNat => Ext::Fin(0),
            _ => Ext::NegInf,
        }
    }

    /// Least domain letter.
    pub fn domain_min(self) -> Letter {
        match self {
            Algebra::Prop { k } => Letter::Val(Valuation::new(k, 0)),
            _ => Letter::Num(self.dmin_ext()),
        }
    }

    /// Greatest domain letter.
    pub fn domain_max(self) -> Letter {
        match self {
            Algebra::Prop { k } => Letter::Val(Valuation::new(k, (1u32 << k) - 1)),
            _ => Letter::Num(Ext::PosInf),
        }
    }

    /// All letters of a propositional domain in ascending order.
    pub fn valuations(self) -> Vec<Letter> {
        match self {
            Algebra::Prop { k } => (0..(1u32 << k)).map(|b| Letter::Val(Valuation::new(k, b))).collect(),
            _ => Vec::new(),
        }
    }

    pub fn is_letter(self, d: &Letter) -> bool {
        match (self, d) {
            (Algebra::IntervalNat, Letter::Num(e)) => *e != Ext::NegInf && *e >= Ext::Fin(0),
            (Algebra::IntervalInt, Letter::Num(_)) => true,
            (Algebra::Prop { k }, Letter::Val(v)) => v.width() == k,
            _ => false,
        }
    }

    pub fn check_letter(self, d: &Letter) -> Result<()> {
        if self.is_letter(d) {
            Ok(())
        } else {
            Err(Error::InvalidLetter(d.to_string()))
        }
    }

    pub fn parse_letter(self, tok: &str) -> Result<Letter> {
        let letter = match self {
            Algebra::Prop { .. } => Valuation::parse(tok).map(Letter::Val),
            _ => Ext::parse(tok).map(Letter::Num),
        };
        let letter = letter.ok_or_else(|| Error::InvalidLetter(tok.to_string()))?;
        self.check_letter(&letter)?;
        Ok(letter)
    }

    /// Checks that every atom of `p` belongs to this algebra.
    pub fn check_pred(self, p: &Predicate) -> Result<()> {
        match self {
            Algebra::Prop { k } => {
                if p.has_intervals() {
                    return Err(Error::AlgebraMismatch(format!("interval atom in `{p}` over prop {k}")));
                }
                if let Some(v) = p.max_var() {
                    if v > k {
                        return Err(Error::AlgebraMismatch(format!("`{p}` mentions p{v} but k = {k}")));
                    }
                }
            }
            _ => {
                if p.max_var().is_some() {
                    return Err(Error::AlgebraMismatch(format!("propositional literal in `{p}` over {self}")));
                }
            }
        }
        Ok(())
    }

    pub fn parse_pred(self, text: &str) -> Result<Predicate> {
        let p = parse_predicate(text).map_err(Error::InvalidPredicate)?;
        self.check_pred(&p)?;
        Ok(p)
    }

    /// Applies a Boolean connective, adding one root node.
    pub fn connective(self, op: Connective, args: &[Predicate]) -> Result<Predicate> {
        for a in args {
            self.check_pred(a)?;
        }
        match (op, args) {
            (Connective::Not, [a]) => Ok(Predicate::not(a.clone())),
            (Connective::And, [a, b]) => Ok(Predicate::and(a.clone(), b.clone())),
            (Connective::Or, [a, b]) => Ok(Predicate::or(a.clone(), b.clone())),
            _ => Err(Error::InvalidPredicate(format!("{op:?} applied to {} arguments", args.len()))),
        }
    }

    /// Membership, evaluated recursively over the parse tree.
    pub fn contains(self, p: &Predicate, d: &Letter) -> bool {
        match p {
            Predicate::True => true,
            Predicate::False => false,
            Predicate::Interval(a, b) => match d {
                Letter::Num(e) => Span::new(*a, *b).contains(*e),
                Letter::Val(_) => false,
            },
            Predicate::Lit(l) => match d {
                Letter::Val(v) => l.var <= v.width() && v.get(l.var) == l.positive,
                Letter::Num(_) => false,
            },
            Predicate::And(l, r) => self.contains(l, d) && self.contains(r, d),
            Predicate::Or(l, r) => self.contains(l, d) || self.contains(r, d),
            Predicate::Not(c) => !self.contains(c, d),
        }
    }

    /// Canonical interval list of `p`: the predicate is first put in
    /// negation normal form, negated atoms expand to at most two intervals,
    /// and conjunctions are distributed over the sorted lists.
    pub fn canonical_intervals(self, p: &Predicate) -> Result<IntervalList> {
        self.require_monotonic("to_canonical_intervals")?;
        let dmin = self.dmin_ext();
        fn eval(p: &Predicate, dmin: Ext) -> IntervalList {
            match p {
                Predicate::True => IntervalList::full(dmin),
                Predicate::False | Predicate::Lit(_) => IntervalList::empty(),
                Predicate::Interval(a, b) => IntervalList::atom(*a, *b, dmin),
                Predicate::Not(c) => match &**c {
                    Predicate::Interval(a, b) => IntervalList::atom(*a, *b, dmin).complement(dmin),
                    other => eval(other, dmin).complement(dmin),
                },
                Predicate::And(l, r) => eval(l, dmin).intersect(&eval(r, dmin)),
                Predicate::Or(l, r) => eval(l, dmin).union(&eval(r, dmin)),
            }
        }
        Ok(eval(&p.nnf(), dmin))
    }

    pub fn truth_table(self, p: &Predicate) -> Result<TruthTable> {
        let Algebra::Prop { k } = self else {
            return Err(Error::WrongAlgebraKind { op: "truth_table", expected: "a propositional" });
        };
        fn eval(p: &Predicate, k: u8) -> TruthTable {
            match p {
                Predicate::True => TruthTable::verum(k),
                Predicate::False | Predicate::Interval(..) => TruthTable::falsum(k),
                Predicate::Lit(l) if l.var <= k => TruthTable::literal(k, l.var, l.positive),
                Predicate::Lit(_) => TruthTable::falsum(k),
                Predicate::And(l, r) => eval(l, k).and(&eval(r, k)),
                Predicate::Or(l, r) => eval(l, k).or(&eval(r, k)),
                Predicate::Not(c) => eval(c, k).not(),
            }
        }
        Ok(eval(p, k))
    }

    pub fn denote(self, p: &Predicate) -> Denotation {
        match self {
            Algebra::Prop { .. } => Denotation::Table(self.truth_table(p).expect("prop algebra")),
            _ => Denotation::Intervals(self.canonical_intervals(p).expect("interval algebra")),
        }
    }

    pub fn top(self) -> Denotation {
        self.denote(&Predicate::True)
    }

    pub fn complement(self, d: &Denotation) -> Denotation {
        match d {
            Denotation::Intervals(l) => Denotation::Intervals(l.complement(self.dmin_ext())),
            Denotation::Table(t) => Denotation::Table(t.not()),
        }
    }

    pub fn is_sat(self, p: &Predicate) -> bool {
        !self.denote(p).is_empty()
    }

    pub fn equiv(self, p: &Predicate, q: &Predicate) -> bool {
        self.denote(p) == self.denote(q)
    }

    /// Least letter satisfying `p`, `None` when unsatisfiable.
    pub fn min_model(self, p: &Predicate) -> Result<Option<Letter>> {
        Ok(self.canonical_intervals(p)?.min().map(Letter::Num))
    }

    /// Least satisfying letter in either algebra kind.
    pub fn witness(self, p: &Predicate) -> Option<Letter> {
        self.denote(p).least()
    }

    /// The atom covering the whole domain: `[dmin, inf)` or `true`.
    pub fn top_atom(self) -> Predicate {
        match self {
            Algebra::Prop { .. } => Predicate::True,
            _ => Predicate::Interval(self.dmin_ext(), Ext::PosInf),
        }
    }

    /// Basic predicates whose disjunction denotes `d`, in ascending order of
    /// their least elements: one atom per maximal interval, or one full
    /// conjunction of literals per satisfying valuation.
    pub fn basic_cover(self, d: &Denotation) -> Vec<Predicate> {
        match d {
            Denotation::Intervals(l) => l.spans().iter().map(|s| Predicate::Interval(s.lo, s.hi)).collect(),
            Denotation::Table(t) => t.models().map(valuation_minterm).collect(),
        }
    }

    /// Canonical predicate for a denotation (the disjunction of its basic cover).
    pub fn predicate_of(self, d: &Denotation) -> Predicate {
        let cover = self.basic_cover(d);
        if let (Algebra::Prop { .. }, Denotation::Table(t)) = (self, d) {
            if t.is_full() {
                return Predicate::True;
            }
        }
        Predicate::or_all(cover)
    }
}

/// The conjunction of `k` literals satisfied exactly by `v`.
pub fn valuation_minterm(v: Valuation) -> Predicate {
    Predicate::and_all((1..=v.width()).map(|i| Predicate::Lit(Literal { var: i, positive: v.get(i) })))
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::IntervalNat => f.write_str("interval-nat"),
            Algebra::IntervalInt => f.write_str("interval-int"),
            Algebra::Prop { k } => write!(f, "prop {k}"),
        }
    }
}

impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        match parts.as_slice() {
            ["interval-nat"] => Ok(Algebra::IntervalNat),
            ["interval-int"] => Ok(Algebra::IntervalInt),
            ["prop", k] => {
                let k: u8 = k.parse().map_err(|_| Error::InvalidAlgebra(format!("bad proposition count `{k}`")))?;
                Algebra::prop(k)
            }
            _ => Err(Error::InvalidAlgebra(format!("unknown algebra `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAT: Algebra = Algebra::IntervalNat;

    fn p(s: &str) -> Predicate {
        parse_predicate(s).unwrap()
    }

    fn spans(l: &IntervalList) -> Vec<(Ext, Ext)> {
        l.spans().iter().map(|s| (s.lo, s.hi)).collect()
    }

    #[test]
    fn connective_sizes_and_mismatch() {
        let a = p("[0,50) | [100,200)");
        let b = p("[20,60)");
        let c = NAT.connective(Connective::And, &[a, b]).unwrap();
        assert_eq!(c.size(), 5);
        let bot = NAT.connective(Connective::Not, &[Predicate::True]).unwrap();
        assert!(NAT.equiv(&bot, &Predicate::False));
        assert!(NAT.connective(Connective::And, &[p("p1"), p("[0,1)")]).is_err());
        assert!(NAT.connective(Connective::Not, &[p("[0,1)"), p("[0,1)")]).is_err());
    }

    #[test]
    fn excluded_middle_prop() {
        let alg = Algebra::prop(2).unwrap();
        let q = alg.connective(Connective::Or, &[p("p1"), p("!p1")]).unwrap();
        for v in alg.valuations() {
            assert!(alg.contains(&q, &v));
        }
    }

    #[test]
    fn contains_endpoints() {
        assert!(NAT.contains(&p("[0,100)"), &Letter::num(0)));
        assert!(!NAT.contains(&p("[0,100)"), &Letter::num(100)));
        let q = p("([0,50) | [100,200)) & [20,60)");
        assert!(NAT.contains(&q, &Letter::num(35)));
        assert!(NAT.equiv(&q, &p("[20,50)")));
    }

    #[test]
    fn satisfiability() {
        assert!(!NAT.is_sat(&p("[5,5)")));
        let alg = Algebra::prop(1).unwrap();
        assert!(!alg.is_sat(&p("p1 & !p1")));
        let q = p("[0,100) & [50,150)");
        assert!(NAT.is_sat(&q));
        assert_eq!(NAT.min_model(&q).unwrap(), Some(Letter::num(50)));
    }

    #[test]
    fn canonical_examples() {
        let l = NAT.canonical_intervals(&p("[0,100) & ([50,150) | [20,40))")).unwrap();
        assert_eq!(spans(&l), vec![(Ext::Fin(20), Ext::Fin(40)), (Ext::Fin(50), Ext::Fin(100))]);
        let n = Algebra::IntervalInt.canonical_intervals(&p("![100,200)")).unwrap();
        assert_eq!(spans(&n), vec![(Ext::NegInf, Ext::Fin(100)), (Ext::Fin(200), Ext::PosInf)]);
        assert!(NAT.canonical_intervals(&Predicate::False).unwrap().is_empty());
        assert!(Algebra::prop(2).unwrap().canonical_intervals(&Predicate::True).is_err());
    }

    #[test]
    fn equivalences() {
        assert!(NAT.equiv(&Predicate::True, &p("[0,inf)")));
        assert!(Algebra::IntervalInt.equiv(&Predicate::True, &p("[-inf,inf)")));
        let alg = Algebra::prop(2).unwrap();
        assert!(alg.equiv(&p("p1 & p2"), &p("p2 & p1")));
        assert!(!alg.equiv(&p("p1"), &p("p2")));
    }

    #[test]
    fn min_models() {
        assert_eq!(NAT.min_model(&p("[0,100)")).unwrap(), Some(Letter::num(0)));
        assert_eq!(NAT.min_model(&p("[100,inf)")).unwrap(), Some(Letter::num(100)));
        assert_eq!(NAT.min_model(&p("[5,5)")).unwrap(), None);
        assert!(Algebra::prop(1).unwrap().min_model(&p("p1")).is_err());
    }

    #[test]
    fn infinity_is_a_letter() {
        assert!(NAT.contains(&p("[7,inf)"), &Letter::Num(Ext::PosInf)));
        assert!(!NAT.contains(&p("[7,9)"), &Letter::Num(Ext::PosInf)));
        assert!(NAT.contains(&Predicate::True, &Letter::Num(Ext::PosInf)));
        assert!(NAT.is_letter(&Letter::Num(Ext::PosInf)));
        assert!(!NAT.is_letter(&Letter::num(-1)));
    }

    #[test]
    fn algebra_text() {
        assert_eq!("prop 3".parse::<Algebra>().unwrap(), Algebra::Prop { k: 3 });
        assert!("prop 0".parse::<Algebra>().is_err());
        assert!("prop 17".parse::<Algebra>().is_err());
        assert_eq!(Algebra::IntervalInt.to_string(), "interval-int");
    }
}
