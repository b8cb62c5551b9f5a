//! Bitset over the element indices of a finite group.

use alloc::vec::Vec;
use core::fmt;

/// A subset of `0..universe`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe,
            words: alloc::vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    /// The set `{0}`.
    pub fn identity(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        if universe > 0 {
            s.insert(0);
        }
        s
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(universe: usize, elements: I) -> Self {
        let mut s = Self::empty(universe);
        for e in elements {
            s.insert(e);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Returns `true` if the element was not already present.
    pub fn insert(&mut self, e: usize) -> bool {
        assert!(
            e < self.universe,
            "element {e} outside universe {}",
            self.universe
        );
        let (w, b) = (e / 64, e % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.universe && self.words[e / 64] & (1 << (e % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    /// True for `{0}` (and for the empty set).
    pub fn is_trivial(&self) -> bool {
        self.iter().all(|e| e == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&e| self.contains(e))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical ordering used for lists of subsets: by size, then by the
    /// sorted element list.
    pub fn canonical_cmp(&self, other: &ElementSet) -> core::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.to_vec().cmp(&other.to_vec()))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = ElementSet::empty(70);
        assert!(s.is_empty());
        assert!(s.insert(65));
        assert!(!s.insert(65));
        s.insert(3);
        assert_eq!(s.to_vec(), alloc::vec![3, 65]);
        assert_eq!(s.len(), 2);
        assert!(!s.contains(4));
        assert!(!s.contains(700));
        let full = ElementSet::full(70);
        assert!(s.is_subset(&full));
        assert!(!full.is_subset(&s));
        assert!(ElementSet::identity(5).is_trivial());
    }
}
