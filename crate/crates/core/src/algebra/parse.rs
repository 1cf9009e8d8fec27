//! Text grammar for predicates.
//!
//! ```text
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' 'p' N | '!' unary | primary
//! primary := '(' or ')' | '[' ext ',' ext ')' | 'p' N | 'true' | 'false'
//! ext     := integer | 'inf' | '-inf'
//! ```
//!
//! Whitespace is ignored everywhere.

use super::letter::Ext;
use super::predicate::{Literal, Predicate};

pub fn parse_predicate(text: &str) -> Result<Predicate, String> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { chars, pos: 0 };
    let pred = p.or()?;
    if p.pos != p.chars.len() {
        return Err(format!("unexpected `{}` at offset {}", p.chars[p.pos], p.pos));
    }
    Ok(pred)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(match self.peek() {
                Some(found) => format!("expected `{c}`, found `{found}` at offset {}", self.pos),
                None => format!("expected `{c}`, found end of input"),
            })
        }
    }

    fn or(&mut self) -> Result<Predicate, String> {
        let mut left = self.and()?;
        while self.eat('|') {
            let right = self.and()?;
            left = Predicate::or(left, right);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Predicate, String> {
        let mut left = self.unary()?;
        while self.eat('&') {
            let right = self.unary()?;
            left = Predicate::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Predicate, String> {
        if self.eat('!') {
            if self.peek() == Some('p') {
                let var = self.prop_index()?;
                return Ok(Predicate::Lit(Literal { var, positive: false }));
            }
            let inner = self.unary()?;
            return Ok(Predicate::not(inner));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Predicate, String> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.or()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some('[') => {
                self.pos += 1;
                let a = self.ext()?;
                self.expect(',')?;
                let b = self.ext()?;
                self.expect(')')?;
                Ok(Predicate::Interval(a, b))
            }
            Some('p') => Ok(Predicate::lit(self.prop_index()?)),
            Some(_) if self.keyword("true") => Ok(Predicate::True),
            Some(_) if self.keyword("false") => Ok(Predicate::False),
            Some(c) => Err(format!("unexpected `{c}` at offset {}", self.pos)),
            None => Err("unexpected end of input".into()),
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        let end = self.pos + kw.len();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(kw.chars()) {
            self.pos = end;
            true
        } else {
            false
        }
    }

    fn prop_index(&mut self) -> Result<u8, String> {
        self.expect('p')?;
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        match digits.parse::<u8>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(format!("bad proposition index `p{digits}`")),
        }
    }

    fn ext(&mut self) -> Result<Ext, String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-' || c == '+') {
            self.pos += 1;
        }
        let tok: String = self.chars[start..self.pos].iter().collect();
        Ext::parse(&tok).ok_or_else(|| format!("bad interval endpoint `{tok}`"))
    }
}
