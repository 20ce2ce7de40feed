//! Bit-per-item subsets of an item domain.

use std::fmt;

const WORD: usize = 64;

/// A subset of item positions `0..n`.
///
/// Trailing zero words are trimmed, so two sets with the same members are
/// equal regardless of the capacity they were built with.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ItemSet {
    words: Vec<u64>,
}

impl ItemSet {
    pub fn empty() -> Self {
        ItemSet { words: Vec::new() }
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n / WORD];
        if n % WORD != 0 {
            words.push((1u64 << (n % WORD)) - 1);
        }
        ItemSet { words }
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = ItemSet::empty();
        s.insert(i);
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, i: usize) {
        let (w, b) = (i / WORD, i % WORD);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, i: usize) {
        let (w, b) = (i / WORD, i % WORD);
        if w < self.words.len() {
            self.words[w] &= !(1 << b);
            self.trim();
        }
    }

    pub fn with(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.insert(i);
        s
    }

    pub fn without(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.remove(i);
        s
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / WORD).is_some_and(|w| w & (1 << (i % WORD)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn union(&self, other: &ItemSet) -> ItemSet {
        let (long, short) = if self.words.len() >= other.words.len() { (self, other) } else { (other, self) };
        let mut words = long.words.clone();
        for (w, o) in words.iter_mut().zip(&short.words) {
            *w |= o;
        }
        ItemSet { words }
    }

    pub fn intersection(&self, other: &ItemSet) -> ItemSet {
        let mut s = ItemSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        s.trim();
        s
    }

    pub fn difference(&self, other: &ItemSet) -> ItemSet {
        let mut s = ItemSet {
            words: self
                .words
                .iter()
                .enumerate()
                .map(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0))
                .collect(),
        };
        s.trim();
        s
    }

    pub fn symmetric_difference(&self, other: &ItemSet) -> ItemSet {
        self.difference(other).union(&other.difference(self))
    }

    pub fn is_subset(&self, other: &ItemSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint(&self, other: &ItemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Member positions in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * WORD + b)
            })
        })
    }

    /// Re-indexes onto a sub-domain: member `positions[k]` becomes `k`.
    /// Members not listed in `positions` are dropped.
    pub fn project(&self, positions: &[usize]) -> ItemSet {
        let mut out = ItemSet::empty();
        for (k, &p) in positions.iter().enumerate() {
            if self.contains(p) {
                out.insert(k);
            }
        }
        out
    }

    /// Key for human-facing orderings: by size, then by member positions.
    pub fn display_key(&self) -> (usize, Vec<usize>) {
        (self.len(), self.iter().collect())
    }
}

impl FromIterator<usize> for ItemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ItemSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
