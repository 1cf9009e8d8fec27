use std::fmt;

use super::letter::Ext;
use crate::error::{Error, Result};

/// A propositional literal `p_var` or `!p_var`; `var` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: u8,
    pub positive: bool,
}

impl Literal {
    pub fn negate(self) -> Literal {
        Literal { var: self.var, positive: !self.positive }
    }
}

/// Parse tree of a predicate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    True,
    False,
    /// The interval atom `[a, b)`.
    Interval(Ext, Ext),
    Lit(Literal),
    And(Box<Predicate>, Box<Predicate>),
    Or(Box<Predicate>, Box<Predicate>),
    Not(Box<Predicate>),
}

impl Predicate {
    pub fn interval(a: impl Into<Ext>, b: impl Into<Ext>) -> Predicate {
        Predicate::Interval(a.into(), b.into())
    }

    /// `[a, inf)`
    pub fn from(a: impl Into<Ext>) -> Predicate {
        Predicate::Interval(a.into(), Ext::PosInf)
    }

    pub fn lit(var: u8) -> Predicate {
        Predicate::Lit(Literal { var, positive: true })
    }

    pub fn nlit(var: u8) -> Predicate {
        Predicate::Lit(Literal { var, positive: false })
    }

    pub fn and(l: Predicate, r: Predicate) -> Predicate {
        Predicate::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Predicate, r: Predicate) -> Predicate {
        Predicate::Or(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: Predicate) -> Predicate {
        Predicate::Not(Box::new(p))
    }

    /// Left-nested disjunction; `false` when empty.
    pub fn or_all(items: impl IntoIterator<Item = Predicate>) -> Predicate {
        items.into_iter().reduce(Predicate::or).unwrap_or(Predicate::False)
    }

    /// Left-nested conjunction; `true` when empty.
    pub fn and_all(items: impl IntoIterator<Item = Predicate>) -> Predicate {
        items.into_iter().reduce(Predicate::and).unwrap_or(Predicate::True)
    }

    /// Number of parse-tree nodes, atoms and constants counting 1.
    pub fn size(&self) -> usize {
        match self {
            Predicate::True | Predicate::False | Predicate::Interval(..) | Predicate::Lit(_) => 1,
            Predicate::And(l, r) | Predicate::Or(l, r) => 1 + l.size() + r.size(),
            Predicate::Not(c) => 1 + c.size(),
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Predicate::Interval(..) | Predicate::Lit(_))
    }

    /// A conjunction of atoms and constants.
    pub fn is_basic(&self) -> bool {
        match self {
            Predicate::True | Predicate::False | Predicate::Interval(..) | Predicate::Lit(_) => true,
            Predicate::And(l, r) => l.is_basic() && r.is_basic(),
            _ => false,
        }
    }

    pub(crate) fn has_intervals(&self) -> bool {
        match self {
            Predicate::Interval(..) => true,
            Predicate::True | Predicate::False | Predicate::Lit(_) => false,
            Predicate::And(l, r) | Predicate::Or(l, r) => l.has_intervals() || r.has_intervals(),
            Predicate::Not(c) => c.has_intervals(),
        }
    }

    pub(crate) fn max_var(&self) -> Option<u8> {
        match self {
            Predicate::Lit(l) => Some(l.var),
            Predicate::True | Predicate::False | Predicate::Interval(..) => None,
            Predicate::And(l, r) | Predicate::Or(l, r) => match (l.max_var(), r.max_var()) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            },
            Predicate::Not(c) => c.max_var(),
        }
    }

    /// Negation normal form: negations only directly above interval atoms.
    /// Negated literals and constants are folded.
    pub fn nnf(&self) -> Predicate {
        self.nnf_signed(false)
    }

    fn nnf_signed(&self, neg: bool) -> Predicate {
        match (self, neg) {
            (Predicate::True, false) | (Predicate::False, true) => Predicate::True,
            (Predicate::True, true) | (Predicate::False, false) => Predicate::False,
            (Predicate::Interval(..), false) => self.clone(),
            (Predicate::Interval(..), true) => Predicate::not(self.clone()),
            (Predicate::Lit(l), _) => Predicate::Lit(if neg { l.negate() } else { *l }),
            (Predicate::Not(c), _) => c.nnf_signed(!neg),
            (Predicate::And(l, r), false) => Predicate::and(l.nnf_signed(false), r.nnf_signed(false)),
            (Predicate::And(l, r), true) => Predicate::or(l.nnf_signed(true), r.nnf_signed(true)),
            (Predicate::Or(l, r), false) => Predicate::or(l.nnf_signed(false), r.nnf_signed(false)),
            (Predicate::Or(l, r), true) => Predicate::and(l.nnf_signed(true), r.nnf_signed(true)),
        }
    }

    /// Syntactic DNF over literals of a propositional predicate; each inner
    /// vector is one conjunction. Aborts once more than `cap` disjuncts
    /// would be produced.
    pub fn prop_dnf(&self, cap: usize) -> Result<Vec<Vec<Literal>>> {
        fn go(p: &Predicate, cap: usize) -> Result<Vec<Vec<Literal>>> {
            match p {
                Predicate::True => Ok(vec![Vec::new()]),
                Predicate::False => Ok(Vec::new()),
                Predicate::Lit(l) => Ok(vec![vec![*l]]),
                Predicate::Or(l, r) => {
                    let mut a = go(l, cap)?;
                    a.extend(go(r, cap)?);
                    if a.len() > cap {
                        return Err(Error::LimitExceeded(format!("DNF exceeds {cap} disjuncts")));
                    }
                    Ok(a)
                }
                Predicate::And(l, r) => {
                    let a = go(l, cap)?;
                    let b = go(r, cap)?;
                    if a.len().saturating_mul(b.len()) > cap {
                        return Err(Error::LimitExceeded(format!("DNF exceeds {cap} disjuncts")));
                    }
                    let mut out = Vec::with_capacity(a.len() * b.len());
                    for x in &a {
                        for y in &b {
                            let mut c = x.clone();
                            for lit in y {
                                if !c.contains(lit) {
                                    c.push(*lit);
                                }
                            }
                            out.push(c);
                        }
                    }
                    Ok(out)
                }
                Predicate::Interval(..) | Predicate::Not(_) => Err(Error::InvalidPredicate(
                    "interval atom in a propositional predicate".into(),
                )),
            }
        }
        go(&self.nnf(), cap)
    }

    fn precedence(&self) -> u8 {
        match self {
            Predicate::Or(..) => 1,
            Predicate::And(..) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::True => f.write_str("true"),
            Predicate::False => f.write_str("false"),
            Predicate::Interval(a, b) => write!(f, "[{a},{b})"),
            Predicate::Lit(l) => write!(f, "{}p{}", if l.positive { "" } else { "!" }, l.var),
            Predicate::Not(c) => {
                if c.precedence() < 3 || matches!(**c, Predicate::Lit(_)) {
                    write!(f, "!({c})")
                } else {
                    write!(f, "!{c}")
                }
            }
            Predicate::And(l, r) => {
                write_operand(f, l, l.precedence() < 2)?;
                f.write_str(" & ")?;
                write_operand(f, r, r.precedence() <= 2)
            }
            Predicate::Or(l, r) => {
                write_operand(f, l, false)?;
                f.write_str(" | ")?;
                write_operand(f, r, r.precedence() <= 1)
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, p: &Predicate, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({p})")
    } else {
        write!(f, "{p}")
    }
}
