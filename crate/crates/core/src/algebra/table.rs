use super::letter::Valuation;

/// Truth table of a propositional predicate over `k` propositions: bit `v`
/// is set iff valuation `v` satisfies the predicate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    k: u8,
    words: Vec<u64>,
}

impl TruthTable {
    fn word_count(k: u8) -> usize {
        (1usize << k).div_ceil(64)
    }

    pub fn falsum(k: u8) -> Self {
        TruthTable { k, words: vec![0; Self::word_count(k)] }
    }

    pub fn verum(k: u8) -> Self {
        let mut t = TruthTable { k, words: vec![u64::MAX; Self::word_count(k)] };
        t.trim();
        t
    }

    /// Table of the literal `p_var` (or its negation).
    pub fn literal(k: u8, var: u8, positive: bool) -> Self {
        let mut t = TruthTable::falsum(k);
        let shift = k - var;
        for v in 0..(1u32 << k) {
            if ((v >> shift) & 1 == 1) == positive {
                t.set(v);
            }
        }
        t
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    fn set(&mut self, v: u32) {
        self.words[(v / 64) as usize] |= 1u64 << (v % 64);
    }

    pub fn get(&self, v: u32) -> bool {
        (self.words[(v / 64) as usize] >> (v % 64)) & 1 == 1
    }

    // clear bits beyond 2^k in the last word
    fn trim(&mut self) {
        let n = 1usize << self.k;
        if !n.is_multiple_of(64) {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << (n % 64)) - 1;
        }
    }

    pub fn and(&self, other: &TruthTable) -> TruthTable {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        TruthTable { k: self.k, words }
    }

    pub fn or(&self, other: &TruthTable) -> TruthTable {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        TruthTable { k: self.k, words }
    }

    pub fn not(&self) -> TruthTable {
        let mut t = TruthTable { k: self.k, words: self.words.iter().map(|w| !w).collect() };
        t.trim();
        t
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.not().is_empty()
    }

    /// Satisfying valuations in ascending order.
    pub fn models(&self) -> impl Iterator<Item = Valuation> + '_ {
        let k = self.k;
        (0..(1u32 << k)).filter(move |&v| self.get(v)).map(move |v| Valuation::new(k, v))
    }

    pub fn least(&self) -> Option<Valuation> {
        self.models().next()
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excluded_middle() {
        let p = TruthTable::literal(2, 1, true);
        assert!(p.or(&p.not()).is_full());
        assert!(p.and(&p.not()).is_empty());
        assert_eq!(p.count(), 2);
    }

    #[test]
    fn wide_tables_trim() {
        let t = TruthTable::verum(7);
        assert_eq!(t.count(), 128);
        assert!(t.not().is_empty());
    }
}
