//! Labeled word samples.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{show_word, Algebra, Letter, Word};
use crate::error::{Error, Result};

/// A finite, consistent set of labeled words, ordered by the
/// lexicographic word order (a proper prefix precedes its extensions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    algebra: Algebra,
    words: BTreeMap<Word, bool>,
}

impl Sample {
    pub fn new(algebra: Algebra) -> Self {
        Sample { algebra, words: BTreeMap::new() }
    }

    pub fn from_pairs(algebra: Algebra, pairs: impl IntoIterator<Item = (Word, bool)>) -> Result<Self> {
        let mut s = Sample::new(algebra);
        for (w, b) in pairs {
            s.insert(w, b)?;
        }
        Ok(s)
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    /// Adds a labeled word; re-adding with the same label is a no-op.
    pub fn insert(&mut self, w: Word, label: bool) -> Result<()> {
        for d in &w {
            self.algebra.check_letter(d)?;
        }
        match self.words.get(&w) {
            Some(&b) if b != label => Err(Error::InconsistentSample(show_word(&w))),
            Some(_) => Ok(()),
            None => {
                self.words.insert(w, label);
                Ok(())
            }
        }
    }

    pub fn union(&self, other: &Sample) -> Result<Sample> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch(format!("{} vs {}", self.algebra, other.algebra)));
        }
        let mut s = self.clone();
        for (w, &b) in &other.words {
            s.insert(w.clone(), b)?;
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn label(&self, w: &[Letter]) -> Option<bool> {
        self.words.get(w).copied()
    }

    pub fn contains_word(&self, w: &[Letter]) -> bool {
        self.words.contains_key(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, bool)> + '_ {
        self.words.iter().map(|(w, &b)| (w, b))
    }

    /// Words of the sample in ascending order.
    pub fn words(&self) -> impl Iterator<Item = &Word> + '_ {
        self.words.keys()
    }

    /// Letters occurring anywhere in the sample, ascending.
    pub fn letters(&self) -> BTreeSet<Letter> {
        self.words.keys().flat_map(|w| w.iter().copied()).collect()
    }

    /// All prefixes of sample words, ascending.
    pub fn prefixes(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for w in self.words.keys() {
            for i in 0..=w.len() {
                out.insert(w[..i].to_vec());
            }
        }
        out
    }

    /// Words `w` with `prefix` as a prefix, in ascending order.
    fn with_prefix<'a>(&'a self, prefix: &'a [Letter]) -> impl Iterator<Item = (&'a Word, bool)> + 'a {
        self.words
            .range(prefix.to_vec()..)
            .take_while(move |(w, _)| w.starts_with(prefix))
            .map(|(w, &b)| (w, b))
    }

    /// Whether some common extension `z` labels `u·z` and `v·z` differently.
    pub fn distinguishes(&self, u: &[Letter], v: &[Letter]) -> bool {
        self.separating_suffix(u, v).is_some()
    }

    /// The least suffix `z` with conflicting labels on `u·z` and `v·z`.
    pub fn separating_suffix(&self, u: &[Letter], v: &[Letter]) -> Option<Word> {
        let mut found: Option<Word> = None;
        let mut probe: Word = v.to_vec();
        for (w, b) in self.with_prefix(u) {
            let z = &w[u.len()..];
            probe.truncate(v.len());
            probe.extend_from_slice(z);
            if let Some(b2) = self.label(&probe) {
                if b2 != b {
                    found = Some(z.to_vec());
                    break;
                }
            }
        }
        found
    }

    /// `u ~ v`: no suffix separates the two words.
    pub fn equivalent(&self, u: &[Letter], v: &[Letter]) -> bool {
        !self.distinguishes(u, v)
    }

    /// Keeps the words built only from `letters`.
    pub fn restrict(&self, letters: &BTreeSet<Letter>) -> Sample {
        let words = self
            .words
            .iter()
            .filter(|(w, _)| w.iter().all(|d| letters.contains(d)))
            .map(|(w, &b)| (w.clone(), b))
            .collect();
        Sample { algebra: self.algebra, words }
    }

    /// Whether `accepts` labels every word as the sample does.
    pub fn agrees_with(&self, mut accepts: impl FnMut(&[Letter]) -> bool) -> bool {
        self.words.iter().all(|(w, &b)| accepts(w) == b)
    }

    /// Parses the line format `+ d1 d2 ...` / `- d1 d2 ...`.
    pub fn parse(text: &str, algebra: Algebra) -> Result<Sample> {
        let mut s = Sample::new(algebra);
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            let label = match toks.next() {
                Some("+") => true,
                Some("-") => false,
                Some(t) => return Err(Error::Parse { line: line_no, msg: format!("expected `+` or `-`, found `{t}`") }),
                None => continue,
            };
            let word = toks
                .map(|t| algebra.parse_letter(t))
                .collect::<Result<Word>>()
                .map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?;
            s.insert(word, label).map_err(|e| Error::Parse { line: line_no, msg: e.to_string() })?;
        }
        Ok(s)
    }
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, &b) in &self.words {
            f.write_str(if b { "+" } else { "-" })?;
            for d in w {
                write!(f, " {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Parses a space-separated word; the empty string is ε.
pub fn parse_word(text: &str, algebra: Algebra) -> Result<Word> {
    text.split_whitespace().map(|t| algebra.parse_letter(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(xs: &[i64]) -> Word {
        xs.iter().map(|&x| Letter::num(x)).collect()
    }

    fn bands_sample() -> Sample {
        Sample::from_pairs(
            Algebra::IntervalNat,
            [
                (w(&[]), false),
                (w(&[0]), true),
                (w(&[100]), false),
                (w(&[200]), false),
                (w(&[0, 0]), true),
                (w(&[0, 100]), true),
                (w(&[0, 200]), false),
            ],
        )
        .unwrap()
    }

    #[test]
    fn conflicting_labels_rejected() {
        let mut s = Sample::new(Algebra::IntervalNat);
        s.insert(w(&[1]), true).unwrap();
        s.insert(w(&[1]), true).unwrap();
        assert!(matches!(s.insert(w(&[1]), false), Err(Error::InconsistentSample(_))));
        assert!(s.insert(vec![Letter::num(-1)], true).is_err());
    }

    #[test]
    fn separation() {
        let mut s = bands_sample();
        assert!(s.distinguishes(&w(&[0]), &w(&[100])));
        assert_eq!(s.separating_suffix(&w(&[0]), &w(&[100])), Some(w(&[])));
        assert!(s.equivalent(&w(&[0]), &w(&[0])));
        s.insert(w(&[150]), false).unwrap();
        assert!(s.equivalent(&w(&[100]), &w(&[150])));
        assert!(s.distinguishes(&w(&[]), &w(&[0])));
    }

    #[test]
    fn text_round_trip() {
        let s = bands_sample();
        let text = s.to_string();
        assert!(text.starts_with("-\n+ 0\n+ 0 0\n"));
        assert_eq!(Sample::parse(&text, Algebra::IntervalNat).unwrap(), s);
        let err = Sample::parse("+ 0\n? 1\n", Algebra::IntervalNat).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn restriction() {
        let s = bands_sample();
        let keep: BTreeSet<Letter> = [Letter::num(0)].into_iter().collect();
        let r = s.restrict(&keep);
        assert_eq!(r.len(), 3);
    }
}
