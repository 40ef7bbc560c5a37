//! Bitset over a small universe of dense vertex ids.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{BitAnd, BitOr, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

const WORD: usize = 64;

/// A set of vertex ids. Equality, hashing and ordering depend only on the
/// members, never on how many words happen to be allocated.
#[derive(Clone, Default)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_universe(n: usize) -> Self {
        VertexSet {
            words: vec![0; n.div_ceil(WORD)],
        }
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::with_universe(n);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let hi = (lo + WORD).min(n);
            *w = if hi - lo == WORD {
                u64::MAX
            } else {
                (1u64 << (hi - lo)) - 1
            };
        }
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    pub fn from_bits(bits: u64) -> Self {
        VertexSet { words: vec![bits] }
    }

    /// The set as a single machine word, if every member is below 64.
    pub fn bits(&self) -> Option<u64> {
        match self.trimmed() {
            [] => Some(0),
            [w] => Some(*w),
            _ => None,
        }
    }

    fn trimmed(&self) -> &[u64] {
        let len = self
            .words
            .iter()
            .rposition(|&w| w != 0)
            .map_or(0, |i| i + 1);
        &self.words[..len]
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let (i, b) = (v / WORD, v % WORD);
        if i >= self.words.len() {
            self.words.resize(i + 1, 0);
        }
        let fresh = self.words[i] & (1 << b) == 0;
        self.words[i] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let (i, b) = (v / WORD, v % WORD);
        match self.words.get_mut(i) {
            Some(w) if *w & (1 << b) != 0 => {
                *w &= !(1 << b);
                true
            }
            _ => false,
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words
            .get(v / WORD)
            .is_some_and(|w| w & (1 << (v % WORD)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn last(&self) -> Option<usize> {
        let t = self.trimmed();
        t.last()
            .map(|w| (t.len() - 1) * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        VertexSet { words }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        VertexSet { words }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (i, w) in self.words.iter_mut().enumerate() {
            *w &= other.words.get(i).copied().unwrap_or(0);
        }
    }

    /// `0..n` minus this set.
    pub fn complement(&self, n: usize) -> VertexSet {
        VertexSet::full(n).difference(self)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let b = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + b);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl Extend<usize> for VertexSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for v in iter {
            self.insert(v);
        }
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for VertexSet {}

impl Hash for VertexSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.trimmed().hash(state);
    }
}

/// Lexicographic order on the sorted member lists.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitOr for &VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: &VertexSet) -> VertexSet {
        self.union(rhs)
    }
}

impl BitAnd for &VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: &VertexSet) -> VertexSet {
        self.intersection(rhs)
    }
}

impl Sub for &VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: &VertexSet) -> VertexSet {
        self.difference(rhs)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Vec::<usize>::deserialize(d)?.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn equality_ignores_capacity() {
        let mut a = VertexSet::with_universe(300);
        a.insert(3);
        let b = VertexSet::singleton(3);
        assert_eq!(a, b);
        assert_eq!(a.bits(), Some(8));
        assert_eq!(VertexSet::with_universe(200), VertexSet::new());
    }

    #[test]
    fn full_and_complement() {
        assert_eq!(VertexSet::full(0).len(), 0);
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(VertexSet::full(65).len(), 65);
        let s: VertexSet = [1, 70].into_iter().collect();
        let c = s.complement(72);
        assert_eq!(c.len(), 70);
        assert!(!c.contains(70) && c.contains(71) && c.contains(0));
        assert_eq!(s.last(), Some(70));
        assert_eq!(s.bits(), None);
    }

    #[test]
    fn remove_and_order() {
        let mut s: VertexSet = [5, 2, 9].into_iter().collect();
        assert!(s.remove(5));
        assert!(!s.remove(5));
        assert_eq!(s.to_vec(), vec![2, 9]);
        let t: VertexSet = [2, 10].into_iter().collect();
        assert!(s < t);
        assert!(VertexSet::new() < s);
    }

    fn arb_set() -> impl Strategy<Value = VertexSet> {
        prop::collection::vec(0usize..150, 0..40).prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #[test]
        fn set_algebra_matches_btreeset(a in arb_set(), b in arb_set()) {
            use std::collections::BTreeSet;
            let sa: BTreeSet<usize> = a.iter().collect();
            let sb: BTreeSet<usize> = b.iter().collect();
            prop_assert_eq!((&a | &b).to_vec(), sa.union(&sb).copied().collect::<Vec<_>>());
            prop_assert_eq!((&a & &b).to_vec(), sa.intersection(&sb).copied().collect::<Vec<_>>());
            prop_assert_eq!((&a - &b).to_vec(), sa.difference(&sb).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.is_subset(&b), sa.is_subset(&sb));
            prop_assert_eq!(a.is_disjoint(&b), sa.is_disjoint(&sb));
            prop_assert_eq!(a.intersection_len(&b), sa.intersection(&sb).count());
            let mut u = a.clone();
            u.union_with(&b);
            prop_assert_eq!(&u, &(&a | &b));
            let mut i = a.clone();
            i.intersect_with(&b);
            prop_assert_eq!(&i, &(&a & &b));
        }
    }
}
