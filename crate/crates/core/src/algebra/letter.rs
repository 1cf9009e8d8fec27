use std::fmt;

/// An integer extended with `-inf` and `inf`.
///
/// The derived order places `NegInf` below every finite value and `PosInf`
/// above it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Fin(i64),
    PosInf,
}

impl Ext {
    pub fn is_finite(self) -> bool {
        matches!(self, Ext::Fin(_))
    }

    /// Successor of a finite value; infinities are fixed points.
    pub fn succ(self) -> Ext {
        match self {
            Ext::Fin(v) => Ext::Fin(v.saturating_add(1)),
            other => other,
        }
    }

    pub fn parse(tok: &str) -> Option<Ext> {
        match tok {
            "inf" | "+inf" => Some(Ext::PosInf),
            "-inf" => Some(Ext::NegInf),
            _ => tok.parse::<i64>().ok().map(Ext::Fin),
        }
    }
}

impl From<i64> for Ext {
    fn from(v: i64) -> Self {
        Ext::Fin(v)
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::Fin(v) => write!(f, "{v}"),
            Ext::PosInf => f.write_str("inf"),
        }
    }
}

/// An assignment of truth values to propositions `p1..pk`.
///
/// Bit `k - i` of `bits` holds `p_i`, so numeric order on `bits` agrees with
/// the lexicographic order of the bitstring `p1 p2 .. pk`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation {
    width: u8,
    bits: u32,
}

impl Valuation {
    pub fn new(width: u8, bits: u32) -> Self {
        debug_assert!(width <= 32);
        let mask = if width >= 32 { u32::MAX } else { (1u32 << width) - 1 };
        Valuation { width, bits: bits & mask }
    }

    pub fn width(self) -> u8 {
        self.width
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Value of proposition `p_var` (1-based).
    pub fn get(self, var: u8) -> bool {
        debug_assert!(var >= 1 && var <= self.width);
        (self.bits >> (self.width - var)) & 1 == 1
    }

    pub fn parse(tok: &str) -> Option<Valuation> {
        if tok.is_empty() || tok.len() > 32 || !tok.bytes().all(|b| b == b'0' || b == b'1') {
            return None;
        }
        let bits = u32::from_str_radix(tok, 2).ok()?;
        Some(Valuation::new(tok.len() as u8, bits))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for var in 1..=self.width {
            f.write_str(if self.get(var) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A domain element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Num(Ext),
    Val(Valuation),
}

impl Letter {
    pub fn num(v: i64) -> Letter {
        Letter::Num(Ext::Fin(v))
    }

    pub fn as_ext(self) -> Option<Ext> {
        match self {
            Letter::Num(e) => Some(e),
            Letter::Val(_) => None,
        }
    }

    pub fn as_valuation(self) -> Option<Valuation> {
        match self {
            Letter::Val(v) => Some(v),
            Letter::Num(_) => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Num(e) => e.fmt(f),
            Letter::Val(v) => v.fmt(f),
        }
    }
}

/// A finite sequence of letters; the empty word is ε.
pub type Word = Vec<Letter>;

/// Renders a word as space-separated letters, `ε` when empty.
pub fn show_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "ε".to_string();
    }
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}
