use std::fmt;

use super::letter::Ext;

/// Half-open span `[lo, hi)` over the extended integers.
///
/// A span whose upper end is `inf` also contains the letter `inf`, so that
/// `[a, inf)` covers the whole upper tail of the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub lo: Ext,
    pub hi: Ext,
}

impl Span {
    pub fn new(lo: Ext, hi: Ext) -> Self {
        Span { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    pub fn contains(&self, d: Ext) -> bool {
        self.lo <= d && (d < self.hi || (self.hi == Ext::PosInf && self.lo < self.hi))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.lo, self.hi)
    }
}

/// Canonical form of a monotonic predicate: sorted, nonempty, pairwise
/// disjoint and non-adjacent spans.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalList {
    spans: Vec<Span>,
}

impl IntervalList {
    pub fn empty() -> Self {
        IntervalList { spans: Vec::new() }
    }

    /// The whole domain `[dmin, inf)`.
    pub fn full(dmin: Ext) -> Self {
        IntervalList { spans: vec![Span::new(dmin, Ext::PosInf)] }
    }

    /// The atom `[a, b)` clipped to a domain starting at `dmin`.
    pub fn atom(a: Ext, b: Ext, dmin: Ext) -> Self {
        let lo = a.max(dmin);
        if lo < b {
            IntervalList { spans: vec![Span::new(lo, b)] }
        } else {
            IntervalList::empty()
        }
    }

    /// Builds a list from arbitrary spans, sorting and coalescing them.
    pub fn from_spans(spans: impl IntoIterator<Item = Span>) -> Self {
        let mut v: Vec<Span> = spans.into_iter().filter(|s| !s.is_empty()).collect();
        v.sort();
        IntervalList { spans: coalesce(v) }
    }

    pub fn spans(&self) -> &[Span] {
        &self.spans
    }

    pub fn len(&self) -> usize {
        self.spans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn min(&self) -> Option<Ext> {
        self.spans.first().map(|s| s.lo)
    }

    pub fn contains(&self, d: Ext) -> bool {
        // spans are sorted, a binary search on `lo` finds the only candidate
        let idx = self.spans.partition_point(|s| s.lo <= d);
        idx > 0 && self.spans[idx - 1].contains(d)
    }

    pub fn union(&self, other: &IntervalList) -> IntervalList {
        let mut merged = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.spans.len() || j < other.spans.len() {
            let take_left = j >= other.spans.len()
                || (i < self.spans.len() && self.spans[i].lo <= other.spans[j].lo);
            if take_left {
                merged.push(self.spans[i]);
                i += 1;
            } else {
                merged.push(other.spans[j]);
                j += 1;
            }
        }
        IntervalList { spans: coalesce(merged) }
    }

    /// Two-pointer intersection; a list of `a` spans meets a list of `b`
    /// spans in at most `a + b` spans.
    pub fn intersect(&self, other: &IntervalList) -> IntervalList {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.spans.len() && j < other.spans.len() {
            let a = self.spans[i];
            let b = other.spans[j];
            let lo = a.lo.max(b.lo);
            let hi = a.hi.min(b.hi);
            if lo < hi {
                out.push(Span::new(lo, hi));
            }
            if a.hi <= b.hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalList { spans: coalesce(out) }
    }

    /// Complement relative to the domain `[dmin, inf)`.
    pub fn complement(&self, dmin: Ext) -> IntervalList {
        let mut out = Vec::with_capacity(self.len() + 1);
        let mut cursor = dmin;
        for s in &self.spans {
            if cursor < s.lo {
                out.push(Span::new(cursor, s.lo));
            }
            cursor = cursor.max(s.hi);
        }
        if cursor < Ext::PosInf {
            out.push(Span::new(cursor, Ext::PosInf));
        }
        IntervalList { spans: out }
    }
}

impl fmt::Display for IntervalList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spans.is_empty() {
            return f.write_str("false");
        }
        for (i, s) in self.spans.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            s.fmt(f)?;
        }
        Ok(())
    }
}

// input must be sorted by `lo`
fn coalesce(sorted: Vec<Span>) -> Vec<Span> {
    let mut out: Vec<Span> = Vec::with_capacity(sorted.len());
    for s in sorted {
        if s.is_empty() {
            continue;
        }
        match out.last_mut() {
            Some(last) if s.lo <= last.hi => last.hi = last.hi.max(s.hi),
            _ => out.push(s),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(a: i64, b: i64) -> Span {
        Span::new(Ext::Fin(a), Ext::Fin(b))
    }

    #[test]
    fn adjacency_merges() {
        let l = IntervalList::from_spans([sp(5, 9), sp(0, 5)]);
        assert_eq!(l.spans(), &[sp(0, 9)]);
    }

    #[test]
    fn complement_of_inner_atom() {
        let l = IntervalList::atom(Ext::Fin(100), Ext::Fin(200), Ext::NegInf);
        let c = l.complement(Ext::NegInf);
        assert_eq!(
            c.spans(),
            &[Span::new(Ext::NegInf, Ext::Fin(100)), Span::new(Ext::Fin(200), Ext::PosInf)]
        );
    }

    #[test]
    fn upper_tail_contains_infinity() {
        let l = IntervalList::atom(Ext::Fin(3), Ext::PosInf, Ext::Fin(0));
        assert!(l.contains(Ext::PosInf));
        assert!(l.contains(Ext::Fin(3)));
        assert!(!l.contains(Ext::Fin(2)));
        assert!(!IntervalList::atom(Ext::Fin(0), Ext::Fin(3), Ext::Fin(0)).contains(Ext::PosInf));
    }

    #[test]
    fn intersection_bound() {
        let a = IntervalList::from_spans([sp(0, 10), sp(20, 30), sp(40, 50)]);
        let b = IntervalList::from_spans([sp(5, 25), sp(28, 45)]);
        let c = a.intersect(&b);
        assert_eq!(c.spans(), &[sp(5, 10), sp(20, 25), sp(28, 30), sp(40, 45)]);
        assert!(c.len() <= a.len() + b.len());
    }
}
